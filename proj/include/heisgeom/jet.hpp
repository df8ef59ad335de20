#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heis {

class DomainError : public std::domain_error {
 public:
  DomainError(std::string primitive, const std::string& detail)
      : std::domain_error(primitive + ": " + detail), primitive_(std::move(primitive)) {}
  const std::string& primitive() const { return primitive_; }

 private:
  std::string primitive_;
};

inline double& abs_dead_band() {
  static double tau = 1e-12;
  return tau;
}

namespace jet_index {
inline constexpr int s2[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
// 000 001 002 011 012 022 111 112 122 222
inline constexpr int s3[3][3][3] = {
    {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}},
    {{1, 3, 4}, {3, 6, 7}, {4, 7, 8}},
    {{2, 4, 5}, {4, 7, 8}, {5, 8, 9}},
};
inline constexpr int pair_i[6] = {0, 0, 0, 1, 1, 2};
inline constexpr int pair_j[6] = {0, 1, 2, 1, 2, 2};
inline constexpr int tri_i[10] = {0, 0, 0, 0, 0, 0, 1, 1, 1, 2};
inline constexpr int tri_j[10] = {0, 0, 0, 1, 1, 2, 1, 1, 2, 2};
inline constexpr int tri_k[10] = {0, 1, 2, 1, 2, 2, 1, 2, 2, 2};
}  // namespace jet_index

/// Value with exact partial derivatives up to order N (0..3) in three variables.
template <int N>
struct Jet {
  static_assert(N >= 0 && N <= 3);
  static constexpr int order = N;

  double v = 0;
  std::array<double, (N >= 1) ? 3 : 0> d{};
  std::array<double, (N >= 2) ? 6 : 0> h{};
  std::array<double, (N >= 3) ? 10 : 0> t{};

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Jet variable(int i, double value) {
    Jet j(value);
    if constexpr (N >= 1) j.d[i] = 1.0;
    return j;
  }

  double grad(int i) const {
    if constexpr (N >= 1) return d[i];
    return 0.0;
  }
  double hess(int i, int j) const {
    if constexpr (N >= 2) return h[jet_index::s2[i][j]];
    return 0.0;
  }
  double third(int i, int j, int k) const {
    if constexpr (N >= 3) return t[jet_index::s3[i][j][k]];
    return 0.0;
  }

  Jet& operator+=(const Jet& b) {
    v += b.v;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += b.d[i];
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += b.h[i];
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += b.t[i];
    return *this;
  }
  Jet& operator-=(const Jet& b) {
    v -= b.v;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b.d[i];
    for (std::size_t i = 0; i < h.size(); ++i) h[i] -= b.h[i];
    for (std::size_t i = 0; i < t.size(); ++i) t[i] -= b.t[i];
    return *this;
  }
  Jet& operator*=(double s) {
    v *= s;
    for (auto& x : d) x *= s;
    for (auto& x : h) x *= s;
    for (auto& x : t) x *= s;
    return *this;
  }
};

using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

template <int N>
Jet<N> operator-(Jet<N> a) {
  a *= -1.0;
  return a;
}
template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) {
  return a += b;
}
template <int N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) {
  return a -= b;
}
template <int N>
Jet<N> operator+(Jet<N> a, double b) {
  a.v += b;
  return a;
}
template <int N>
Jet<N> operator+(double b, Jet<N> a) {
  a.v += b;
  return a;
}
template <int N>
Jet<N> operator-(Jet<N> a, double b) {
  a.v -= b;
  return a;
}
template <int N>
Jet<N> operator-(double b, const Jet<N>& a) {
  Jet<N> r = -a;
  r.v += b;
  return r;
}
template <int N>
Jet<N> operator*(Jet<N> a, double s) {
  return a *= s;
}
template <int N>
Jet<N> operator*(double s, Jet<N> a) {
  return a *= s;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  using namespace jet_index;
  Jet<N> r(a.v * b.v);
  if constexpr (N >= 1)
    for (int i = 0; i < 3; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  if constexpr (N >= 2)
    for (int m = 0; m < 6; ++m) {
      const int i = pair_i[m], j = pair_j[m];
      r.h[m] = a.h[m] * b.v + a.d[i] * b.d[j] + a.d[j] * b.d[i] + a.v * b.h[m];
    }
  if constexpr (N >= 3)
    for (int m = 0; m < 10; ++m) {
      const int i = tri_i[m], j = tri_j[m], k = tri_k[m];
      r.t[m] = a.t[m] * b.v + a.h[s2[i][j]] * b.d[k] + a.h[s2[i][k]] * b.d[j] +
               a.h[s2[j][k]] * b.d[i] + a.d[i] * b.h[s2[j][k]] + a.d[j] * b.h[s2[i][k]] +
               a.d[k] * b.h[s2[i][j]] + a.v * b.t[m];
    }
  return r;
}

/// f(a) given f and its first three derivatives at a.v.
template <int N>
Jet<N> chain(const Jet<N>& a, double f0, double f1, double f2, double f3) {
  using namespace jet_index;
  Jet<N> r(f0);
  if constexpr (N >= 1)
    for (int i = 0; i < 3; ++i) r.d[i] = f1 * a.d[i];
  if constexpr (N >= 2)
    for (int m = 0; m < 6; ++m) {
      const int i = pair_i[m], j = pair_j[m];
      r.h[m] = f2 * a.d[i] * a.d[j] + f1 * a.h[m];
    }
  if constexpr (N >= 3)
    for (int m = 0; m < 10; ++m) {
      const int i = tri_i[m], j = tri_j[m], k = tri_k[m];
      r.t[m] = f3 * a.d[i] * a.d[j] * a.d[k] +
               f2 * (a.h[s2[i][j]] * a.d[k] + a.h[s2[i][k]] * a.d[j] + a.h[s2[j][k]] * a.d[i]) +
               f1 * a.t[m];
    }
  return r;
}

template <int N>
Jet<N> reciprocal(const Jet<N>& a) {
  if (a.v == 0.0) throw DomainError("divide", "division by zero");
  const double x = 1.0 / a.v;
  return chain(a, x, -x * x, 2 * x * x * x, -6 * x * x * x * x);
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  if constexpr (N == 0) {
    if (b.v == 0.0) throw DomainError("divide", "division by zero");
    return Jet<N>(a.v / b.v);
  } else {
    return a * reciprocal(b);
  }
}
template <int N>
Jet<N> operator/(Jet<N> a, double b) {
  if (b == 0.0) throw DomainError("divide", "division by zero");
  return a *= (1.0 / b);
}
template <int N>
Jet<N> operator/(double a, const Jet<N>& b) {
  return reciprocal(b) * a;
}

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
  if (a.v < 0 || (N >= 1 && a.v == 0))
    throw DomainError("sqrt", "argument must be positive, got " + std::to_string(a.v));
  const double s = std::sqrt(a.v);
  if constexpr (N == 0) return Jet<N>(s);
  const double f1 = 0.5 / s, f2 = -0.5 * f1 / a.v, f3 = -1.5 * f2 / a.v;
  return chain(a, s, f1, f2, f3);
}

template <int N>
Jet<N> exp(const Jet<N>& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e, e);
}

template <int N>
Jet<N> log(const Jet<N>& a) {
  if (!(a.v > 0)) throw DomainError("ln", "argument must be positive, got " + std::to_string(a.v));
  const double x = 1.0 / a.v;
  return chain(a, std::log(a.v), x, -x * x, 2 * x * x * x);
}

template <int N>
Jet<N> sin(const Jet<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return chain(a, s, c, -s, -c);
}

template <int N>
Jet<N> cos(const Jet<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return chain(a, c, -s, -c, s);
}

template <int N>
Jet<N> abs(const Jet<N>& a) {
  if constexpr (N == 0) return Jet<N>(std::fabs(a.v));
  if (std::fabs(a.v) <= abs_dead_band())
    throw DomainError("abs", "argument inside the non-differentiable band around 0");
  const double s = a.v > 0 ? 1.0 : -1.0;
  return chain(a, std::fabs(a.v), s, 0.0, 0.0);
}

template <int N>
Jet<N> powi(const Jet<N>& a, long n) {
  if (n == 0) return Jet<N>(1.0);
  if (a.v == 0.0 && n < 0) throw DomainError("pow", "zero raised to a negative power");
  double f[4];
  for (int k = 0; k < 4; ++k) {
    double c = 1.0;
    for (int m = 0; m < k; ++m) c *= static_cast<double>(n - m);
    f[k] = (c == 0.0) ? 0.0 : c * std::pow(a.v, static_cast<double>(n - k));
  }
  return chain(a, f[0], f[1], f[2], f[3]);
}

template <int N>
Jet<N> pow(const Jet<N>& a, double c) {
  if (c == std::nearbyint(c) && std::fabs(c) < 1e9) return powi(a, static_cast<long>(c));
  if (!(a.v > 0)) throw DomainError("pow", "non-integer power of a non-positive base");
  const double x = a.v;
  const double f0 = std::pow(x, c);
  return chain(a, f0, c * f0 / x, c * (c - 1) * f0 / (x * x), c * (c - 1) * (c - 2) * f0 / (x * x * x));
}

template <int N>
Jet<N> pow(const Jet<N>& a, const Jet<N>& b) {
  bool constant_exponent = true;
  for (double x : b.d) constant_exponent = constant_exponent && x == 0.0;
  for (double x : b.h) constant_exponent = constant_exponent && x == 0.0;
  for (double x : b.t) constant_exponent = constant_exponent && x == 0.0;
  if (constant_exponent) return pow(a, b.v);
  if (!(a.v > 0)) throw DomainError("pow", "variable exponent requires a positive base");
  return exp(b * log(a));
}

/// Partial derivative in variable k as a jet of one lower order.
template <int N>
Jet<N - 1> partial(int k, const Jet<N>& a) {
  static_assert(N >= 1);
  Jet<N - 1> r(a.d[k]);
  if constexpr (N >= 2)
    for (int i = 0; i < 3; ++i) r.d[i] = a.h[jet_index::s2[k][i]];
  if constexpr (N >= 3)
    for (int m = 0; m < 6; ++m)
      r.h[m] = a.t[jet_index::s3[k][jet_index::pair_i[m]][jet_index::pair_j[m]]];
  return r;
}

/// Drop derivatives above order M.
template <int M, int N>
Jet<M> truncate(const Jet<N>& a) {
  static_assert(M <= N);
  Jet<M> r(a.v);
  if constexpr (M >= 1) r.d = a.d;
  if constexpr (M >= 2) r.h = a.h;
  if constexpr (M >= 3) r.t = a.t;
  return r;
}

/// X_i f (i = 1,2,3) at point p, as a jet of one lower order.
template <int N>
Jet<N - 1> frame_derivative(int i, const Jet<N>& f, double x1, double x2) {
  using R = Jet<N - 1>;
  if (i == 3) return partial(2, f);
  if (i == 1) return partial(0, f) - R::variable(1, x2) * partial(2, f) * 0.5;
  if (i == 2) return partial(1, f) + R::variable(0, x1) * partial(2, f) * 0.5;
  throw std::invalid_argument("frame_derivative: index must be 1, 2 or 3");
}

}  // namespace heis
