#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "heisgeom/field.hpp"

namespace heis {

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule.
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureSpec {
  int order = 32;
  int singular_order = 64;
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int max_cells = 4096;
  std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  int richardson_order = 1;

  void validate() const;
};

struct QuadResult {
  double value = 0;
  double error = 0;
  long evaluations = 0;
  int cells = 0;
};

/// Adaptive bisection; each cell compares the order-n rule with the order-n/2 rule.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec, std::vector<double> breakpoints = {});

struct RectDomain {
  double v0, v1, w0, w1;
};

/// (v, w) = center + rho (cos theta, sin theta), rho in [r0, r1], theta in [theta0, theta1].
struct AnnulusDomain {
  double cv = 0, cw = 0;
  double r0 = 0, r1 = 1;
  double theta0 = 0, theta1 = 6.283185307179586;
  bool excise = false;  // inner radius replaced by the exclusion radius
};

using Domain2D = std::variant<RectDomain, AnnulusDomain>;

/// Integral of f(v, w) dv dw over the domain; for an excised annulus r0 is max(r0, eps).
QuadResult integrate_2d(const std::function<double(double, double)>& f, const Domain2D& domain,
                        const QuadratureSpec& spec, double eps = 0.0);

struct MeasureKind {
  enum Kind { RiemannianLength, SubRiemannianBoundary, PerimeterImplicit, PerimeterParametric };
  Kind kind = SubRiemannianBoundary;
  double L = 1.0;

  static MeasureKind riemannian(double L) { return {RiemannianLength, L}; }
  static MeasureKind sub_riemannian() { return {SubRiemannianBoundary, 0.0}; }
};

/// Length density of the chosen measure at a curve point.
double length_density(const CurvePoint& c, const MeasureKind& kind);

/// Integral of f(t, point) against the chosen curve measure on [gamma.t0, gamma.t1].
QuadResult length_integral(const CurveModel& gamma,
                           const std::function<double(double, const CurvePoint&)>& f,
                           const MeasureKind& kind, const QuadratureSpec& spec);

/// ||M n|| with n = f_v x f_w; the finite-L variant adds the n3/sqrt(L) row.
double perimeter_density(const PatchPoint& pp);
double perimeter_density_L(const PatchPoint& pp, double L);

double perimeter_ratio(const ScalarField& u, const HPoint& p);  // ||grad_H u|| / ||grad u||

QuadResult perimeter_integral_parametric(
    const Patch& patch, const std::function<double(const PatchPoint&, double, double)>& integrand,
    const Domain2D& domain, const QuadratureSpec& spec, double eps = 0.0);

QuadResult perimeter_integral_implicit(const ScalarField& u, const Patch& chart,
                                       const std::function<double(const HPoint&)>& f,
                                       const Domain2D& domain, const QuadratureSpec& spec,
                                       double eps = 0.0);

struct ExtrapolationResult {
  double value = 0;
  double error = 0;
  std::vector<double> eps;
  std::vector<double> values;
  std::vector<double> corrections;
};

/// First-order Richardson on the last two radii, error bar from the third.
ExtrapolationResult excise_and_extrapolate(const std::function<double(double)>& family,
                                           const std::vector<double>& eps,
                                           const std::function<double(double)>& correction = {});

ExtrapolationResult extrapolate_values(const std::vector<double>& eps,
                                       const std::vector<double>& values);

}  // namespace heis
