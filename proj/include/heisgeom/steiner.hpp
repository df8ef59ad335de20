#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "heisgeom/quadrature.hpp"
#include "heisgeom/scene.hpp"

namespace heis {

using Rational = boost::multiprecision::cpp_rational;

struct SteinerCoefficients {
  double A = 0, B = 0, C = 0, D = 0, E = 0;
  double horizontal_gradient_norm = 0;  // ||grad_H delta||, 1 for an eikonal delta
  double operator[](int s) const;
};

SteinerCoefficients coefficients_at(const ScalarField& delta, const HPoint& p);

/// Polynomial in the symbols A..E with rational coefficients.
class GPolynomial {
 public:
  enum Symbol { A = 0, B, C, D, E };
  using Monomial = std::array<int, 5>;

  struct Order {
    bool operator()(const Monomial& a, const Monomial& b) const;  // degree descending, then lexicographic descending
  };
  using Terms = std::map<Monomial, Rational, Order>;

  GPolynomial() = default;
  static GPolynomial constant(const Rational& c);
  static GPolynomial symbol(Symbol s);

  GPolynomial& operator+=(const GPolynomial& o);
  GPolynomial& operator-=(const GPolynomial& o);
  friend GPolynomial operator+(GPolynomial a, const GPolynomial& b) { return a += b; }
  friend GPolynomial operator-(GPolynomial a, const GPolynomial& b) { return a -= b; }
  friend GPolynomial operator*(const GPolynomial& a, const GPolynomial& b);
  friend GPolynomial operator*(const Rational& c, const GPolynomial& a);
  bool operator==(const GPolynomial& o) const { return terms_ == o.terms_; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  double evaluate(const SteinerCoefficients& c) const;
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// The g-derivation table on a single symbol.
GPolynomial g_symbol(GPolynomial::Symbol s);
/// Linear, Leibniz extension of the table.
GPolynomial g_apply(const GPolynomial& p);
/// div^(0) = 1, div^(i) = div^(i-1) A + g(div^(i-1)).
GPolynomial iterated_divergence(int i);

struct SteinerTerm {
  int power = 0;
  std::string polynomial;
  double integral = 0;  // integral of the polynomial over the boundary against dH^3_cc
  double error = 0;
  double inverse_factorial = 0;
};

struct SteinerReport {
  std::string region;
  int order = 0;  // highest power of eps retained
  bool has_volume = false;
  double volume = 0;
  std::vector<SteinerTerm> raw;
  std::vector<SteinerTerm> simplified;
  std::vector<double> eps;
  std::vector<double> raw_values;         // volume + raw increments (or increments without a volume)
  std::vector<double> simplified_values;
  std::vector<double> differences;        // simplified - raw
  std::vector<double> comparison;         // scene comparison values, when provided
  std::vector<double> comparison_error;   // |simplified - comparison|
  double max_eikonal_defect = 0;
  double tolerance = 1e-10;
  bool pass = true;
  std::vector<std::string> warnings;
};

struct SteinerOptions {
  QuadratureSpec spec;
  double tau_eik = 1e-8;
  double tau_char = 1e-8;
  int sample_grid = 16;
  double tolerance = 1e-10;
};

/// Simplified polynomial of the eps^k coefficient: 1, A, C, then B^(j-1) D and B^(j-1)(AD - E).
GPolynomial simplified_coefficient(int power);

SteinerReport steiner_series(const SceneSurface& region, int order, const std::vector<double>& eps,
                             const SteinerOptions& opt = {});

struct GIdentityRow {
  std::string relation;
  double finite_difference = 0;
  double algebraic = 0;
  double residual = 0;
};

struct GIdentityReport {
  HPoint point;
  double h = 0;
  double eikonal = 0;
  std::vector<GIdentityRow> rows;
  double max_residual = 0;
  double threshold = 0;
  bool pass = false;
};

/// Derivatives of A..E along the horizontal gradient flow of delta versus the g table.
GIdentityReport g_identity_check(const ScalarField& delta, const HPoint& p, double h = 1e-4);

}  // namespace heis
