#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "heisgeom/core.hpp"
#include "heisgeom/jet.hpp"

namespace heis {

/// Scalar function on R^3 evaluable as jets of order 0..3.
class ScalarField {
 public:
  using F0 = std::function<Jet<0>(const Vec3<Jet<0>>&)>;
  using F1 = std::function<Jet<1>(const Vec3<Jet<1>>&)>;
  using F2 = std::function<Jet<2>(const Vec3<Jet<2>>&)>;
  using F3 = std::function<Jet<3>(const Vec3<Jet<3>>&)>;

  ScalarField() = default;
  ScalarField(F0 f0, F1 f1, F2 f2, F3 f3, std::string name = {})
      : f0_(std::move(f0)), f1_(std::move(f1)), f2_(std::move(f2)), f3_(std::move(f3)),
        name_(std::move(name)) {}

  /// Wraps a generic callable templated over the scalar type.
  template <class G>
  static ScalarField from(G g, std::string name = {}) {
    return ScalarField([g](const Vec3<Jet<0>>& x) { return g(x); },
                       [g](const Vec3<Jet<1>>& x) { return g(x); },
                       [g](const Vec3<Jet<2>>& x) { return g(x); },
                       [g](const Vec3<Jet<3>>& x) { return g(x); }, std::move(name));
  }

  template <int N>
  Jet<N> jet(const HPoint& p) const {
    const Vec3<Jet<N>> x{Jet<N>::variable(0, p.x1), Jet<N>::variable(1, p.x2),
                         Jet<N>::variable(2, p.x3)};
    return apply<N>(x);
  }

  template <int N>
  Jet<N> apply(const Vec3<Jet<N>>& x) const {
    if constexpr (N == 0) return f0_(x);
    else if constexpr (N == 1) return f1_(x);
    else if constexpr (N == 2) return f2_(x);
    else return f3_(x);
  }

  double value(const HPoint& p) const { return jet<0>(p).v; }
  bool valid() const { return static_cast<bool>(f0_); }
  const std::string& name() const { return name_; }

  /// Composition x -> this(map(x)) for a map templated over the scalar type.
  template <class M>
  ScalarField compose(M map) const {
    auto self = *this;
    return ScalarField::from(
        [self, map](const auto& x) {
          constexpr int N = std::decay_t<decltype(x[0])>::order;
          return self.template apply<N>(map(x));
        },
        name_);
  }

 private:
  F0 f0_;
  F1 f1_;
  F2 f2_;
  F3 f3_;
  std::string name_;
};

/// Frame derivatives of a field at a point.
struct HorizontalJet {
  double Xu[3]{};       // X1u, X2u, X3u
  double XXu[3][3]{};   // XXu[i][j] = X_{i+1} X_{j+1} u
};

HorizontalJet horizontal_jet(const ScalarField& u, const HPoint& p);
HorizontalJet horizontal_jet(const Jet2& u, const HPoint& p);

struct CurvePoint {
  Vec3d x, dx, ddx;
  HPoint point() const { return HPoint::from(x); }
};

/// Twice differentiable curve with exact derivatives.
class CurveModel {
 public:
  using Fn = std::function<CurvePoint(double)>;

  CurveModel() = default;
  CurveModel(Fn f, double t0, double t1, std::string name = {})
      : f_(std::move(f)), t0_(t0), t1_(t1), name_(std::move(name)) {}

  /// Wraps a generic callable mapping a Jet<2> parameter to three Jet<2> coordinates.
  template <class G>
  static CurveModel from(G g, double t0, double t1, std::string name = {}) {
    return CurveModel(
        [g](double t) {
          const Vec3<Jet2> c = g(Jet2::variable(0, t));
          CurvePoint cp;
          for (int i = 0; i < 3; ++i) {
            cp.x[i] = c[i].v;
            cp.dx[i] = c[i].d[0];
            cp.ddx[i] = c[i].h[0];
          }
          return cp;
        },
        t0, t1, std::move(name));
  }

  CurvePoint operator()(double t) const { return f_(t); }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  const std::string& name() const { return name_; }
  bool valid() const { return static_cast<bool>(f_); }

  /// Same trace over [t1, t0] traversed backwards (parameter s = t0 + t1 - t).
  CurveModel reversed() const;
  /// g * gamma.
  CurveModel left_translated(const HPoint& g) const;
  CurveModel rotated(double theta) const;
  CurveModel dilated(double r) const;
  /// t = a + b s.
  CurveModel reparametrized(double a, double b) const;

 private:
  Fn f_;
  double t0_ = 0, t1_ = 1;
  std::string name_;
};

struct PatchPoint {
  Vec3d f, fv, fw, fvv, fvw, fww;
};

/// Parametric patch f(v, w) with partials to second order.
class Patch {
 public:
  using Fn = std::function<PatchPoint(double, double)>;

  Patch() = default;
  explicit Patch(Fn f, std::string name = {}) : f_(std::move(f)), name_(std::move(name)) {}

  template <class G>
  static Patch from(G g, std::string name = {}) {
    return Patch(
        [g](double v, double w) {
          const Vec3<Jet2> c = g(Jet2::variable(0, v), Jet2::variable(1, w));
          PatchPoint pp;
          for (int i = 0; i < 3; ++i) {
            pp.f[i] = c[i].v;
            pp.fv[i] = c[i].d[0];
            pp.fw[i] = c[i].d[1];
            pp.fvv[i] = c[i].h[0];
            pp.fvw[i] = c[i].h[1];
            pp.fww[i] = c[i].h[3];
          }
          return pp;
        },
        std::move(name));
  }

  PatchPoint operator()(double v, double w) const { return f_(v, w); }
  const std::string& name() const { return name_; }
  bool valid() const { return static_cast<bool>(f_); }

 private:
  Fn f_;
  std::string name_;
};

inline Vec3d cross(const Vec3d& a, const Vec3d& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot(const Vec3d& a, const Vec3d& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

/// Horizontal lift of a planar curve given by generic callable g(Jet2 t) -> {x1, x2}.
CurveModel horizontal_lift(std::function<std::array<Jet2, 2>(const Jet2&)> planar, double t0,
                           double t1, double z0, std::string name = {});

}  // namespace heis
