#include "heisgeom/field.hpp"

#include "heisgeom/quadrature.hpp"

namespace heis {

HorizontalJet horizontal_jet(const Jet2& u, const HPoint& p) {
  const double a[3][3] = {{1.0, 0.0, -0.5 * p.x2}, {0.0, 1.0, 0.5 * p.x1}, {0.0, 0.0, 1.0}};
  HorizontalJet hj;
  for (int i = 0; i < 3; ++i) hj.Xu[i] = a[i][0] * u.d[0] + a[i][1] * u.d[1] + a[i][2] * u.d[2];
  const double u3 = u.d[2];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) s += a[i][k] * a[j][m] * u.hess(k, m);
      // Derivative of the coefficient -x2/2 of X1 (resp. x1/2 of X2) along X_i.
      if (j == 0) s += -0.5 * a[i][1] * u3;
      if (j == 1) s += 0.5 * a[i][0] * u3;
      hj.XXu[i][j] = s;
    }
  return hj;
}

HorizontalJet horizontal_jet(const ScalarField& u, const HPoint& p) {
  return horizontal_jet(u.jet<2>(p), p);
}

CurveModel CurveModel::reversed() const {
  auto f = f_;
  const double a = t0_, b = t1_;
  return CurveModel(
      [f, a, b](double s) {
        CurvePoint c = f(a + b - s);
        for (auto& x : c.dx) x = -x;
        return c;
      },
      a, b, name_ + " (reversed)");
}

CurveModel CurveModel::left_translated(const HPoint& g) const {
  auto f = f_;
  return CurveModel(
      [f, g](double t) {
        const CurvePoint c = f(t);
        CurvePoint r;
        r.x = group_mul(g.coords(), c.x);
        r.dx = {c.dx[0], c.dx[1], c.dx[2] - 0.5 * (c.dx[0] * g.x2 - c.dx[1] * g.x1)};
        r.ddx = {c.ddx[0], c.ddx[1], c.ddx[2] - 0.5 * (c.ddx[0] * g.x2 - c.ddx[1] * g.x1)};
        return r;
      },
      t0_, t1_, name_);
}

CurveModel CurveModel::rotated(double theta) const {
  auto f = f_;
  return CurveModel(
      [f, theta](double t) {
        const CurvePoint c = f(t);
        return CurvePoint{rotate_x3(theta, c.x), rotate_x3(theta, c.dx), rotate_x3(theta, c.ddx)};
      },
      t0_, t1_, name_);
}

CurveModel CurveModel::dilated(double r) const {
  if (!(r > 0)) throw std::invalid_argument("dilate: factor must be positive");
  auto f = f_;
  return CurveModel(
      [f, r](double t) {
        const CurvePoint c = f(t);
        return CurvePoint{dilate(r, c.x), dilate(r, c.dx), dilate(r, c.ddx)};
      },
      t0_, t1_, name_);
}

CurveModel CurveModel::reparametrized(double a, double b) const {
  if (b == 0.0) throw std::invalid_argument("reparametrized: zero speed factor");
  auto f = f_;
  double s0 = (t0_ - a) / b, s1 = (t1_ - a) / b;
  if (s1 < s0) std::swap(s0, s1);
  return CurveModel(
      [f, a, b](double s) {
        CurvePoint c = f(a + b * s);
        for (auto& x : c.dx) x *= b;
        for (auto& x : c.ddx) x *= b * b;
        return c;
      },
      s0, s1, name_);
}

CurveModel horizontal_lift(std::function<std::array<Jet2, 2>(const Jet2&)> planar, double t0,
                           double t1, double z0, std::string name) {
  auto area_rate = [planar](double t) {
    const auto c = planar(Jet2::variable(0, t));
    return 0.5 * (c[0].v * c[1].d[0] - c[1].v * c[0].d[0]);
  };
  QuadratureSpec spec;
  spec.order = 16;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 1e-15;
  spec.max_cells = 1 << 14;
  return CurveModel(
      [planar, area_rate, t0, z0, spec](double t) {
        const auto c = planar(Jet2::variable(0, t));
        CurvePoint p;
        double z = z0;
        if (t != t0) {
          try {
            z += integrate_1d(area_rate, t0, t, spec).value;
          } catch (const QuadratureError&) {
            QuadratureSpec loose = spec;
            loose.abs_tol = loose.rel_tol = 1e-13;
            z += integrate_1d(area_rate, t0, t, loose).value;
          }
        }
        p.x = {c[0].v, c[1].v, z};
        p.dx = {c[0].d[0], c[1].d[0], 0.5 * (c[0].v * c[1].d[0] - c[1].v * c[0].d[0])};
        p.ddx = {c[0].h[0], c[1].h[0], 0.5 * (c[0].v * c[1].h[0] - c[1].v * c[0].h[0])};
        return p;
      },
      t0, t1, std::move(name));
}

}  // namespace heis
