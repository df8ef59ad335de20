#include "heisgeom/riem.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

void ApproximationParams::validate() const {
  if (!(L > 0) || !std::isfinite(L)) throw std::invalid_argument("L must be positive and finite");
}

namespace {

void check_L(double L) { ApproximationParams{L}.validate(); }

template <class T>
std::array<std::array<T, 3>, 3> metric_t(const Vec3<T>& x, double L) {
  std::array<std::array<T, 3>, 3> g;
  g[0][0] = 1.0 + x[1] * x[1] * (L / 4);
  g[0][1] = x[0] * x[1] * (-L / 4);
  g[0][2] = x[1] * (L / 2);
  g[1][1] = 1.0 + x[0] * x[0] * (L / 4);
  g[1][2] = x[0] * (-L / 2);
  g[2][2] = T(L);
  g[1][0] = g[0][1];
  g[2][0] = g[0][2];
  g[2][1] = g[1][2];
  return g;
}

Mat3 inverse3(const Mat3& m) {
  const double d = det3(m);
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
    }
  return r;
}

Vec3d cross3(const Vec3d& a, const Vec3d& b) { return cross(a, b); }

// Euclidean field Y = F_j: coefficients and their partial derivatives.
Vec3d frame_field(int j, const HPoint& p, double L) {
  if (j == 0) return X1_at(p);
  if (j == 1) return X2_at(p);
  return {0.0, 0.0, 1.0 / std::sqrt(L)};
}

double frame_field_partial(int j, int m, int a) {
  if (j == 0 && m == 2 && a == 1) return -0.5;
  if (j == 1 && m == 2 && a == 0) return 0.5;
  return 0.0;
}

Vec3d euclid_to_frameL(const HPoint& p, const Vec3d& w, double L) {
  return {w[0], w[1], std::sqrt(L) * contact_form(p, w)};
}

// nabla_X Z for constant F-coefficient fields.
Vec3d nabla_const(const Vec3d& x, const Vec3d& z, double L) {
  Vec3d r{0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (x[i] == 0.0 || z[j] == 0.0) continue;
      const Vec3d c = frame_connection(i, j, L);
      for (int k = 0; k < 3; ++k) r[k] += x[i] * z[j] * c[k];
    }
  return r;
}

Vec3d bracket_const(const Vec3d& x, const Vec3d& y, double L) {
  return {0.0, 0.0, std::sqrt(L) * (x[0] * y[1] - x[1] * y[0])};
}

}  // namespace

Mat3 metric_matrix(const HPoint& p, double L) {
  check_L(L);
  return metric_t<double>(p.coords(), L);
}

Mat3 metric_inverse(const HPoint& p, double L) {
  check_L(L);
  const double x1 = p.x1, x2 = p.x2;
  Mat3 r{};
  r[0] = {1.0, 0.0, -x2 / 2};
  r[1] = {0.0, 1.0, x1 / 2};
  r[2] = {-x2 / 2, x1 / 2, (4.0 + L * (x1 * x1 + x2 * x2)) / (4 * L)};
  return r;
}

double det3(const Mat3& m) {
  using boost::multiprecision::cpp_rational;
  cpp_rational a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = cpp_rational(m[i][j]);
  const cpp_rational d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  return d.convert_to<double>();
}

Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Christoffel christoffel(const HPoint& p, double L) {
  check_L(L);
  const double x1 = p.x1, x2 = p.x2;
  Christoffel c;
  auto set = [&](int m, int i, int j, double v) {
    c.g[m - 1][i - 1][j - 1] = v;
    c.g[m - 1][j - 1][i - 1] = v;
  };
  set(1, 1, 2, L * x2 / 4);
  set(1, 2, 2, -L * x1 / 2);
  set(1, 2, 3, L / 2);
  set(2, 1, 1, -L * x2 / 2);
  set(2, 1, 2, L * x1 / 4);
  set(2, 1, 3, -L / 2);
  set(3, 1, 1, -L * x1 * x2 / 4);
  set(3, 1, 2, L * (x1 * x1 - x2 * x2) / 8);
  set(3, 1, 3, -L * x1 / 4);
  set(3, 2, 2, L * x1 * x2 / 4);
  set(3, 2, 3, -L * x2 / 4);
  return c;
}

Christoffel christoffel_from_metric(const HPoint& p, double L) {
  check_L(L);
  const Vec3<Jet<1>> x{Jet<1>::variable(0, p.x1), Jet<1>::variable(1, p.x2),
                       Jet<1>::variable(2, p.x3)};
  const auto gj = metric_t<Jet<1>>(x, L);
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = gj[i][j].v;
  const Mat3 gi = inverse3(g);
  auto dg = [&](int a, int i, int j) { return gj[i][j].d[a]; };
  Christoffel c;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += gi[m][k] * (dg(i, k, j) + dg(j, i, k) - dg(k, i, j));
        c.g[m][i][j] = 0.5 * s;
      }
  return c;
}

Vec3d frame_connection(int i, int j, double L) {
  const double s = 0.5 * std::sqrt(L);
  static const int X1 = 0, X2 = 1, T = 2;
  Vec3d r{0, 0, 0};
  if (i == X1 && j == X2) r[T] = s;
  if (i == X1 && j == T) r[X2] = -s;
  if (i == X2 && j == X1) r[T] = -s;
  if (i == X2 && j == T) r[X1] = s;
  if (i == T && j == X1) r[X2] = -s;
  if (i == T && j == X2) r[X1] = s;
  return r;
}

Vec3d frame_connection_from_christoffel(int i, int j, const HPoint& p, double L) {
  const Christoffel G = christoffel(p, L);
  const Vec3d X = frame_field(i, p, L);
  const Vec3d Y = frame_field(j, p, L);
  Vec3d w{0, 0, 0};
  for (int m = 0; m < 3; ++m) {
    double s = 0;
    for (int a = 0; a < 3; ++a) s += X[a] * frame_field_partial(j, m, a);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s += G(m, a, b) * X[a] * Y[b];
    w[m] = s;
  }
  return euclid_to_frameL(p, w, L);
}

double koszul_frame(int i, int j, int k, double L) {
  auto e = [](int n) {
    Vec3d v{0, 0, 0};
    v[n] = 1.0;
    return v;
  };
  const Vec3d X = e(i), Y = e(j), Z = e(k);
  return 0.5 * (dotL(bracket_const(X, Y, L), Z) - dotL(bracket_const(Y, Z, L), X) +
                dotL(bracket_const(Z, X, L), Y));
}

double sectional_curvature(const Vec3d& a, const Vec3d& b, double L) {
  check_L(L);
  // R(X,Y)Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z + nabla_[X,Y] Z.
  const Vec3d t1 = nabla_const(b, nabla_const(a, a, L), L);
  const Vec3d t2 = nabla_const(a, nabla_const(b, a, L), L);
  const Vec3d t3 = nabla_const(bracket_const(a, b, L), a, L);
  const Vec3d R{t1[0] - t2[0] + t3[0], t1[1] - t2[1] + t3[1], t1[2] - t2[2] + t3[2]};
  const double area2 = dotL(a, a) * dotL(b, b) - dotL(a, b) * dotL(a, b);
  if (!(area2 > 0)) throw GeometryError("sectional_curvature: degenerate plane");
  return dotL(R, b) / area2;
}

double metric_dot(const HPoint& p, const Vec3d& a, const Vec3d& b, double L) {
  return dotL(euclid_to_frameL(p, a, L), euclid_to_frameL(p, b, L));
}

Vec3d covariant_accel_frameL(const CurvePoint& c, double L) {
  check_L(L);
  const HPoint p = c.point();
  const double w = contact_form(p, c.dx);
  const double wdd = contact_form(p, c.ddx);
  return {c.ddx[0] + L * c.dx[1] * w, c.ddx[1] - L * c.dx[0] * w, std::sqrt(L) * wdd};
}

FrameVector covariant_accel(const CurvePoint& c, double L) {
  return from_frameL(covariant_accel_frameL(c, L), L, c.point());
}

Vec3d covariant_accel_euclidean(const CurvePoint& c, double L) {
  const Christoffel G = christoffel(c.point(), L);
  Vec3d r = c.ddx;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[m] += G(m, i, j) * c.dx[i] * c.dx[j];
  return r;
}

double curve_curvature_L(const CurvePoint& c, double L) {
  const Vec3d D = covariant_accel_frameL(c, L);
  const Vec3d V = euclid_to_frameL(c.point(), c.dx, L);
  const double v = std::sqrt(dotL(V, V));
  if (v == 0.0) throw GeometryError("curve_curvature_L: zero velocity");
  return norm(cross3(D, V)) / (v * v * v);
}

double curve_curvature_L(const CurveModel& gamma, double t, double L) {
  return curve_curvature_L(gamma(t), L);
}

double curvature_radicand_L(const CurvePoint& c, double L) {
  check_L(L);
  const HPoint p = c.point();
  const double w = contact_form(p, c.dx);
  const double wdd = contact_form(p, c.ddx);
  const double d1 = c.dx[0], d2 = c.dx[1];
  const double a1 = c.ddx[0], a2 = c.ddx[1];
  const double vv = d1 * d1 + d2 * d2 + L * w * w;
  if (vv == 0.0) throw GeometryError("curve_curvature_L: zero velocity");
  const double num = (a1 + L * d2 * w) * (a1 + L * d2 * w) + (a2 - L * d1 * w) * (a2 - L * d1 * w) +
                     L * wdd * wdd;
  const double dv = d1 * a1 + d2 * a2 + L * w * wdd;
  return num / (vv * vv) - dv * dv / (vv * vv * vv);
}

double curve_curvature_L_closed_form(const CurvePoint& c, double L) {
  return std::sqrt(std::max(0.0, curvature_radicand_L(c, L)));
}

Vec3d geodesic_accel(const Vec3d& x, const Vec3d& v, double L) {
  const double w = v[2] - 0.5 * (x[0] * v[1] - x[1] * v[0]);
  const double a1 = -L * v[1] * w;
  const double a2 = L * v[0] * w;
  return {a1, a2, 0.5 * (x[0] * a2 - x[1] * a1)};
}

namespace {

using State = std::array<double, 6>;

State rhs(const State& y, double L) {
  const Vec3d a = geodesic_accel({y[0], y[1], y[2]}, {y[3], y[4], y[5]}, L);
  return {y[3], y[4], y[5], a[0], a[1], a[2]};
}

// Quintic Hermite basis on [0,1] and its first two derivatives.
void hermite5(double s, double H[6], double dH[6], double ddH[6]) {
  static const double C[6][6] = {
      {1, 0, 0, -10, 15, -6}, {0, 1, 0, -6, 8, -3},  {0, 0, 0.5, -1.5, 1.5, -0.5},
      {0, 0, 0, 0.5, -1, 0.5}, {0, 0, 0, -4, 7, -3}, {0, 0, 0, 10, -15, 6},
  };
  for (int k = 0; k < 6; ++k) {
    double v = 0, d = 0, dd = 0, sp = 1;
    for (int n = 0; n < 6; ++n) {
      v += C[k][n] * sp;
      sp *= s;
    }
    sp = 1;
    for (int n = 1; n < 6; ++n) {
      d += n * C[k][n] * sp;
      sp *= s;
    }
    sp = 1;
    for (int n = 2; n < 6; ++n) {
      dd += n * (n - 1) * C[k][n] * sp;
      sp *= s;
    }
    H[k] = v, dH[k] = d, ddH[k] = dd;
  }
}

}  // namespace

CurveModel GeodesicSolution::as_curve() const {
  if (t.size() < 2) throw std::logic_error("GeodesicSolution::as_curve: need two samples");
  const auto self = *this;
  return CurveModel(
      [self](double tt) {
        const auto& T = self.t;
        std::size_t k = std::upper_bound(T.begin(), T.end(), tt) - T.begin();
        k = std::clamp<std::size_t>(k, 1, T.size() - 1) - 1;
        const double h = T[k + 1] - T[k];
        const double s = (tt - T[k]) / h;
        double H[6], dH[6], ddH[6];
        hermite5(s, H, dH, ddH);
        CurvePoint c;
        for (int i = 0; i < 3; ++i) {
          const double b[6] = {self.x[k][i], h * self.v[k][i], h * h * self.a[k][i],
                               h * h * self.a[k + 1][i], h * self.v[k + 1][i], self.x[k + 1][i]};
          double v = 0, d = 0, dd = 0;
          for (int n = 0; n < 6; ++n) v += H[n] * b[n], d += dH[n] * b[n], dd += ddH[n] * b[n];
          c.x[i] = v;
          c.dx[i] = d / h;
          c.ddx[i] = dd / (h * h);
        }
        return c;
      },
      t.front(), t.back(), "geodesic");
}

GeodesicSolution geodesic_integrate(const HPoint& x0, const Vec3d& v0, double L, double t0,
                                    double t1, const GeodesicOptions& opt,
                                    std::vector<double> output_times) {
  check_L(L);
  if (!(opt.rtol > 0) || !(opt.atol > 0)) throw std::invalid_argument("geodesic_integrate: tol must be positive");
  if (!(t1 > t0)) throw std::invalid_argument("geodesic_integrate: need t1 > t0");
  static const double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
  static const double a21 = 1. / 5;
  static const double a31 = 3. / 40, a32 = 9. / 40;
  static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
  static const double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561, a54 = -212. / 729;
  static const double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247, a64 = 49. / 176,
                      a65 = -5103. / 18656;
  static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192, b5 = -2187. / 6784, b6 = 11. / 84;
  static const double e1 = 71. / 57600, e3 = -71. / 16695, e4 = 71. / 1920, e5 = -17253. / 339200,
                      e6 = 22. / 525, e7 = -1. / 40;
  (void)c2, (void)c3, (void)c4, (void)c5;

  std::sort(output_times.begin(), output_times.end());
  std::vector<double> stops;
  for (double s : output_times)
    if (s > t0 && s < t1) stops.push_back(s);
  stops.push_back(t1);

  GeodesicSolution sol;
  sol.L = L;
  State y{x0.x1, x0.x2, x0.x3, v0[0], v0[1], v0[2]};
  auto record = [&](double t, const State& s) {
    sol.t.push_back(t);
    sol.x.push_back({s[0], s[1], s[2]});
    sol.v.push_back({s[3], s[4], s[5]});
    sol.a.push_back(geodesic_accel({s[0], s[1], s[2]}, {s[3], s[4], s[5]}, L));
  };
  record(t0, y);
  double t = t0;
  double h = std::min(opt.h0, t1 - t0);
  State k1 = rhs(y, L);
  std::size_t next_stop = 0;
  auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms, double hh) {
    State r = base;
    for (const auto& [c, k] : terms)
      for (int i = 0; i < 6; ++i) r[i] += hh * c * (*k)[i];
    return r;
  };
  while (next_stop < stops.size()) {
    if (sol.steps + sol.rejected > opt.max_steps) throw GeometryError("geodesic_integrate: step budget exhausted");
    bool hit = false;
    if (t + h >= stops[next_stop]) {
      h = stops[next_stop] - t;
      hit = true;
    }
    if (h < opt.hmin) throw GeometryError("geodesic_integrate: step size underflow");
    const State k2 = rhs(axpy(y, {{a21, &k1}}, h), L);
    const State k3 = rhs(axpy(y, {{a31, &k1}, {a32, &k2}}, h), L);
    const State k4 = rhs(axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h), L);
    const State k5 = rhs(axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h), L);
    const State k6 = rhs(axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h), L);
    const State yn = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    const State k7 = rhs(yn, L);
    double err = 0;
    for (int i = 0; i < 6; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::fabs(y[i]), std::fabs(yn[i]));
      err = std::max(err, std::fabs(e) / sc);
    }
    if (err <= 1.0) {
      t = hit ? stops[next_stop] : t + h;
      y = yn;
      k1 = k7;
      ++sol.steps;
      record(t, y);
      if (hit) ++next_stop;
    } else {
      ++sol.rejected;
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= fac;
  }
  return sol;
}

double characteristic_ratio(const Jet<1>& u, const HPoint& p) {
  const double x1u = u.d[0] - 0.5 * p.x2 * u.d[2];
  const double x2u = u.d[1] + 0.5 * p.x1 * u.d[2];
  const double g = std::sqrt(u.d[0] * u.d[0] + u.d[1] * u.d[1] + u.d[2] * u.d[2]);
  if (g == 0.0) return 0.0;
  return std::hypot(x1u, x2u) / g;
}

SurfaceFrame surface_frame(const ScalarField& u, const HPoint& p, double L, const SurfaceTolerances& tol) {
  check_L(L);
  const Jet<1> j = u.jet<1>(p);
  if (characteristic_ratio(j, p) <= tol.tau_char)
    throw GeometryError("characteristic point: horizontal gradient vanishes");
  SurfaceFrame f;
  f.base = p;
  f.L = L;
  const double sL = std::sqrt(L);
  f.p = j.d[0] - 0.5 * p.x2 * j.d[2];
  f.q = j.d[1] + 0.5 * p.x1 * j.d[2];
  f.r = j.d[2] / sL;
  f.l = std::hypot(f.p, f.q);
  f.lL = std::sqrt(f.l * f.l + f.r * f.r);
  f.pbar = f.p / f.l;
  f.qbar = f.q / f.l;
  f.rbarL = f.r / f.lL;
  f.E1 = from_frameL({f.qbar, -f.pbar, 0.0}, L, p);
  f.E2 = from_frameL({f.rbarL * f.pbar, f.rbarL * f.qbar, -f.l / f.lL}, L, p);
  f.nuL = from_frameL({f.p / f.lL, f.q / f.lL, f.rbarL}, L, p);
  return f;
}

SecondFundamentalForm second_fundamental_form(const ScalarField& u, const HPoint& p, double L,
                                              const SurfaceTolerances& tol) {
  const SurfaceFrame fr = surface_frame(u, p, L, tol);
  const double sL = std::sqrt(L);
  const Jet2 uj = u.jet<2>(p);
  const Jet<1> X1u = frame_derivative(1, uj, p.x1, p.x2);
  const Jet<1> X2u = frame_derivative(2, uj, p.x1, p.x2);
  const Jet<1> X3u = frame_derivative(3, uj, p.x1, p.x2);
  const Jet<1> lL = sqrt(X1u * X1u + X2u * X2u + X3u * X3u * (1.0 / L));
  const std::array<Jet<1>, 3> nu{X1u / lL, X2u / lL, (X3u / lL) * (1.0 / sL)};
  auto along = [&](const Vec3d& e, const Jet<1>& f) {
    const double x1f = f.d[0] - 0.5 * p.x2 * f.d[2];
    const double x2f = f.d[1] + 0.5 * p.x1 * f.d[2];
    return e[0] * x1f + e[1] * x2f + e[2] * f.d[2] / sL;
  };
  auto nabla_nu = [&](const Vec3d& e) {
    Vec3d r{along(e, nu[0]), along(e, nu[1]), along(e, nu[2])};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Vec3d c = frame_connection(i, j, L);
        for (int k = 0; k < 3; ++k) r[k] += e[i] * nu[j].v * c[k];
      }
    return r;
  };
  const Vec3d E[2] = {fr.E1L(), fr.E2L()};
  double raw[2][2];
  for (int i = 0; i < 2; ++i) {
    const Vec3d dn = nabla_nu(E[i]);
    for (int j = 0; j < 2; ++j) raw[i][j] = dotL(dn, E[j]);
  }
  SecondFundamentalForm s;
  s.L = L;
  s.base = p;
  s.asymmetry = std::fabs(raw[0][1] - raw[1][0]);
  s.II[0][0] = raw[0][0];
  s.II[1][1] = raw[1][1];
  s.II[0][1] = s.II[1][0] = 0.5 * (raw[0][1] + raw[1][0]);
  return s;
}

double mean_curvature_L(const ScalarField& u, const HPoint& p, double L, const SurfaceTolerances& tol) {
  return second_fundamental_form(u, p, L, tol).trace();
}

double ambient_sectional_L(const ScalarField& u, const HPoint& p, double L, const SurfaceTolerances& tol) {
  const SurfaceFrame fr = surface_frame(u, p, L, tol);
  return sectional_curvature(fr.E1L(), fr.E2L(), L);
}

double gauss_curvature_L(const ScalarField& u, const HPoint& p, double L, const SurfaceTolerances& tol) {
  return ambient_sectional_L(u, p, L, tol) + second_fundamental_form(u, p, L, tol).det();
}

void require_on_surface(const ScalarField& u, const HPoint& p, double tau_on) {
  const Jet<1> j = u.jet<1>(p);
  const double g = std::sqrt(j.d[0] * j.d[0] + j.d[1] * j.d[1] + j.d[2] * j.d[2]);
  const double scale = std::max(1.0, norm(p.coords()));
  if (std::fabs(j.v) > tau_on * std::max(g, 1e-300) * scale)
    throw GeometryError("point off surface: |u| = " + std::to_string(std::fabs(j.v)));
}

GeodesicCurvatureL geodesic_curvature_L(const ScalarField& u, const CurvePoint& c, double L,
                                        const SurfaceTolerances& tol) {
  const HPoint p = c.point();
  require_on_surface(u, p, tol.tau_on);
  const SurfaceFrame fr = surface_frame(u, p, L, tol);
  const Vec3d E1 = fr.E1L(), E2 = fr.E2L(), nu = fr.nuLL();
  const Vec3d D = covariant_accel_frameL(c, L);
  const Vec3d V = euclid_to_frameL(p, c.dx, L);
  const double V1 = dotL(V, E1), V2 = dotL(V, E2);
  const double D1 = dotL(D, E1), D2 = dotL(D, E2);
  const double vv = V1 * V1 + V2 * V2;
  if (vv == 0.0) throw GeometryError("geodesic_curvature_L: zero tangential velocity");
  const double v3 = vv * std::sqrt(vv);
  GeodesicCurvatureL r;
  r.signed_value = (D2 * V1 - D1 * V2) / v3;
  const double dd = D1 * D1 + D2 * D2, dv = D1 * V1 + D2 * V2;
  r.unsigned_value = std::sqrt(std::max(0.0, dd / (vv * vv) - dv * dv / (vv * vv * vv)));
  r.normal_velocity = dotL(V, nu);
  return r;
}

double signed_geodesic_curvature_L(const ScalarField& u, const CurvePoint& c, double L,
                                   const SurfaceTolerances& tol) {
  return geodesic_curvature_L(u, c, L, tol).signed_value;
}

}  // namespace heis
