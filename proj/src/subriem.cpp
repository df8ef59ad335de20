#include "heisgeom/subriem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace heis {

const char* PointClass::label() const {
  switch (kind) {
    case HorizontalPoint:
      return "horizontal";
    case NonHorizontalPoint:
      return "non-horizontal";
    case Characteristic:
      return "characteristic";
    case NonCharacteristic:
      return "non-characteristic";
  }
  return "?";
}

PointClass classify_curve_point(const CurvePoint& c, double tau_h) {
  PointClass pc;
  pc.scale = std::fabs(c.dx[0]) + std::fabs(c.dx[1]) + std::fabs(c.dx[2]);
  if (pc.scale == 0.0) throw GeometryError("zero velocity");
  pc.measure = std::fabs(contact_form(c.point(), c.dx));
  pc.threshold = tau_h;
  if (pc.measure <= tau_h * pc.scale) {
    pc.kind = PointClass::HorizontalPoint;
  } else {
    pc.kind = PointClass::NonHorizontalPoint;
    pc.ambiguous = pc.measure <= 10 * tau_h * pc.scale;
  }
  return pc;
}

PointClass classify_surface_point(const ScalarField& u, const HPoint& p, double tau_char) {
  const Jet<1> j = u.jet<1>(p);
  PointClass pc;
  pc.scale = std::sqrt(j.d[0] * j.d[0] + j.d[1] * j.d[1] + j.d[2] * j.d[2]);
  pc.measure = std::hypot(j.d[0] - 0.5 * p.x2 * j.d[2], j.d[1] + 0.5 * p.x1 * j.d[2]);
  pc.threshold = tau_char;
  pc.kind = characteristic_ratio(j, p) <= tau_char ? PointClass::Characteristic
                                                   : PointClass::NonCharacteristic;
  return pc;
}

double planar_signed_curvature(const CurvePoint& c) {
  const double v2 = c.dx[0] * c.dx[0] + c.dx[1] * c.dx[1];
  if (v2 == 0.0) throw GeometryError("zero horizontal velocity");
  return (c.dx[0] * c.ddx[1] - c.dx[1] * c.ddx[0]) / (v2 * std::sqrt(v2));
}

double k0_value(const CurvePoint& c, double tau_h) {
  const PointClass pc = classify_curve_point(c, tau_h);
  if (pc.horizontal()) return std::fabs(planar_signed_curvature(c));
  return std::hypot(c.dx[0], c.dx[1]) / pc.measure;
}

double boundary_density(const ScalarField& u, const CurvePoint& c, double tau_h,
                        const SurfaceTolerances& tol) {
  const PointClass pc = classify_curve_point(c, tau_h);
  if (pc.horizontal()) return 0.0;
  const SurfaceFrame fr = surface_frame(u, c.point(), 1.0, tol);
  return fr.pbar * c.dx[0] + fr.qbar * c.dx[1];
}

double k0s_value(const ScalarField& u, const CurvePoint& c, double tau_h, const SurfaceTolerances& tol) {
  require_on_surface(u, c.point(), tol.tau_on);
  const PointClass pc = classify_curve_point(c, tau_h);
  if (pc.horizontal()) return 0.0;
  return boundary_density(u, c, tau_h, tol) / pc.measure;
}

namespace {

struct LimitJets {
  Jet<1> X1u, X2u, X3u, l;
};

LimitJets limit_jets(const ScalarField& u, const HPoint& p, const SurfaceTolerances& tol) {
  const Jet2 uj = u.jet<2>(p);
  if (characteristic_ratio(truncate<1>(uj), p) <= tol.tau_char)
    throw GeometryError("characteristic point: horizontal gradient vanishes");
  LimitJets j;
  j.X1u = frame_derivative(1, uj, p.x1, p.x2);
  j.X2u = frame_derivative(2, uj, p.x1, p.x2);
  j.X3u = frame_derivative(3, uj, p.x1, p.x2);
  j.l = sqrt(j.X1u * j.X1u + j.X2u * j.X2u);
  return j;
}

}  // namespace

double K0_value(const ScalarField& u, const HPoint& p, const SurfaceTolerances& tol) {
  const LimitJets j = limit_jets(u, p, tol);
  const Jet<1> P0 = j.X3u / j.l;
  const double pbar = j.X1u.v / j.l.v, qbar = j.X2u.v / j.l.v;
  const double X1P0 = frame_derivative(1, P0, p.x1, p.x2).v;
  const double X2P0 = frame_derivative(2, P0, p.x1, p.x2).v;
  return -P0.v * P0.v - qbar * X1P0 + pbar * X2P0;
}

double H0_value(const ScalarField& u, const HPoint& p, const SurfaceTolerances& tol) {
  const LimitJets j = limit_jets(u, p, tol);
  const Jet<1> pbar = j.X1u / j.l, qbar = j.X2u / j.l;
  return frame_derivative(1, pbar, p.x1, p.x2).v + frame_derivative(2, qbar, p.x1, p.x2).v;
}

double K0_decomposition(const ScalarField& u, const HPoint& p, const SurfaceTolerances& tol) {
  if (classify_surface_point(u, p, tol.tau_char).characteristic())
    throw GeometryError("characteristic point: horizontal gradient vanishes");
  const HorizontalJet h = horizontal_jet(u, p);
  const double a = h.Xu[0], b = h.Xu[1], c = h.Xu[2];
  const double l = std::hypot(a, b);
  const double P0 = c / l;
  double grad[2];
  for (int i = 0; i < 2; ++i)
    grad[i] = h.XXu[i][2] / l - c * (a * h.XXu[i][0] + b * h.XXu[i][1]) / (l * l * l);
  const double Jnu[2] = {b / l, -a / l};
  return -P0 * P0 - (grad[0] * Jnu[0] + grad[1] * Jnu[1]);
}

namespace {

void finish_witnesses(CurvatureReport& r) {
  for (const auto& [L, v] : r.witnesses) r.witness_errors.push_back(std::fabs(v - r.value));
  for (std::size_t i = 1; i < r.witness_errors.size(); ++i)
    if (!(r.witness_errors[i] < r.witness_errors[i - 1]) && r.witness_errors[i] > 1e-13 * std::max(1.0, std::fabs(r.value)))
      r.converging = false;
}

void check_ambiguous(const PointClass& pc, const SubRiemOptions& opt, CurvatureReport& r) {
  if (!pc.ambiguous) return;
  const std::string msg = "classification ambiguous: |omega| within [tau_h, 10 tau_h] of the horizontal threshold";
  if (opt.strict) throw ClassificationError(msg);
  r.warnings.push_back(msg);
}

}  // namespace

CurvatureReport curve_curvature_0(const CurveModel& gamma, double t, const SubRiemOptions& opt) {
  const CurvePoint c = gamma(t);
  CurvatureReport r;
  r.quantity = "k0";
  r.parameter = t;
  r.point = c.point();
  r.cls = classify_curve_point(c, opt.tau_h);
  check_ambiguous(r.cls, opt, r);
  r.value = k0_value(c, opt.tau_h);
  for (double L : opt.sweep) r.witnesses.emplace_back(L, curve_curvature_L(c, L));
  finish_witnesses(r);
  return r;
}

CurvatureReport signed_geodesic_curvature_0(const ScalarField& u, const CurveModel& gamma, double t,
                                            const SubRiemOptions& opt) {
  const CurvePoint c = gamma(t);
  CurvatureReport r;
  r.quantity = "k0s";
  r.parameter = t;
  r.point = c.point();
  r.cls = classify_curve_point(c, opt.tau_h);
  check_ambiguous(r.cls, opt, r);
  r.value = k0s_value(u, c, opt.tau_h, opt.surface());
  for (double L : opt.sweep) r.witnesses.emplace_back(L, signed_geodesic_curvature_L(u, c, L, opt.surface()));
  finish_witnesses(r);
  return r;
}

CurvatureReport gaussian_curvature_0(const ScalarField& u, const HPoint& p, const SubRiemOptions& opt) {
  CurvatureReport r;
  r.quantity = "K0";
  r.point = p;
  r.cls = classify_surface_point(u, p, opt.tau_char);
  r.value = K0_value(u, p, opt.surface());
  for (double L : opt.sweep) r.witnesses.emplace_back(L, gauss_curvature_L(u, p, L, opt.surface()));
  finish_witnesses(r);
  return r;
}

CurvatureReport mean_curvature_0(const ScalarField& u, const HPoint& p, const SubRiemOptions& opt) {
  CurvatureReport r;
  r.quantity = "H0";
  r.point = p;
  r.cls = classify_surface_point(u, p, opt.tau_char);
  r.value = H0_value(u, p, opt.surface());
  for (double L : opt.sweep) r.witnesses.emplace_back(L, mean_curvature_L(u, p, L, opt.surface()));
  finish_witnesses(r);
  return r;
}

double legendrian_signed_curvature(const ScalarField& u, const HPoint& p, double step) {
  // Flow of -E1 = -q-bar X1 + p-bar X2, integrated with RK4 on sub-steps.
  auto field = [&](const Vec3d& x) {
    const HPoint y = HPoint::from(x);
    const Jet<1> j = u.jet<1>(y);
    const double a = j.d[0] - 0.5 * y.x2 * j.d[2];
    const double b = j.d[1] + 0.5 * y.x1 * j.d[2];
    const double l = std::hypot(a, b);
    if (l == 0.0) throw GeometryError("legendrian flow reached a characteristic point");
    const double c1 = -b / l, c2 = a / l;
    return Vec3d{c1, c2, -0.5 * y.x2 * c1 + 0.5 * y.x1 * c2};
  };
  auto flow = [&](double h) {
    Vec3d x = p.coords();
    const int n = 16;
    const double dt = h / n;
    for (int k = 0; k < n; ++k) {
      const Vec3d k1 = field(x);
      Vec3d y;
      for (int i = 0; i < 3; ++i) y[i] = x[i] + 0.5 * dt * k1[i];
      const Vec3d k2 = field(y);
      for (int i = 0; i < 3; ++i) y[i] = x[i] + 0.5 * dt * k2[i];
      const Vec3d k3 = field(y);
      for (int i = 0; i < 3; ++i) y[i] = x[i] + dt * k3[i];
      const Vec3d k4 = field(y);
      for (int i = 0; i < 3; ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return x;
  };
  const Vec3d xp = flow(step), xm = flow(-step), x0 = p.coords();
  CurvePoint c;
  c.x = x0;
  for (int i = 0; i < 3; ++i) {
    c.dx[i] = (xp[i] - xm[i]) / (2 * step);
    c.ddx[i] = (xp[i] - 2 * x0[i] + xm[i]) / (step * step);
  }
  return planar_signed_curvature(c);
}

ScalarField translate_field(const ScalarField& u, const HPoint& g) {
  const HPoint gi = group_inverse(g);
  return u.compose([gi](const auto& x) {
    using J = std::decay_t<decltype(x[0])>;
    return group_mul(Vec3<J>{J(gi.x1), J(gi.x2), J(gi.x3)}, x);
  });
}

ScalarField rotate_field(const ScalarField& u, double theta) {
  return u.compose([theta](const auto& x) { return rotate_x3(-theta, x); });
}

ScalarField dilate_field(const ScalarField& u, double r) {
  if (!(r > 0)) throw std::invalid_argument("dilate: factor must be positive");
  return u.compose([r](const auto& x) { return dilate(1.0 / r, x); });
}

ScalarField scale_field(const ScalarField& u, const ScalarField& sigma) {
  return ScalarField::from(
      [u, sigma](const auto& x) {
        constexpr int N = std::decay_t<decltype(x[0])>::order;
        return exp(sigma.template apply<N>(x)) * u.template apply<N>(x);
      },
      u.name());
}

DefiningFunctionReport defining_function_independence_check(const ScalarField& u, const ScalarField& sigma,
                                                            const HPoint& p, double tol) {
  const ScalarField v = scale_field(u, sigma);
  DefiningFunctionReport r;
  r.K0_u = K0_value(u, p);
  r.K0_v = K0_value(v, p);
  r.K0_difference = std::fabs(r.K0_u - r.K0_v);

  auto pieces = [&](const ScalarField& f, double nu[2], double& P0, double gP0[2]) {
    const LimitJets j = limit_jets(f, p, {});
    const Jet<1> P = j.X3u / j.l;
    P0 = P.v;
    nu[0] = j.X1u.v / j.l.v;
    nu[1] = j.X2u.v / j.l.v;
    gP0[0] = frame_derivative(1, P, p.x1, p.x2).v;
    gP0[1] = frame_derivative(2, P, p.x1, p.x2).v;
  };
  double nu_u[2], nu_v[2], P_u, P_v, g_u[2], g_v[2];
  pieces(u, nu_u, P_u, g_u);
  pieces(v, nu_v, P_v, g_v);
  r.nu0_difference = std::hypot(nu_u[0] - nu_v[0], nu_u[1] - nu_v[1]);
  r.P0_difference = std::fabs(P_u - P_v);
  const HorizontalJet hs = horizontal_jet(sigma, p);
  const double coeff = hs.Xu[2] - P_u * (nu_u[0] * hs.Xu[0] + nu_u[1] * hs.Xu[1]);
  r.identity_residual = std::hypot(g_v[0] - (g_u[0] + coeff * nu_u[0]), g_v[1] - (g_u[1] + coeff * nu_u[1]));
  const double s = std::max(1.0, std::fabs(r.K0_u));
  r.pass = r.K0_difference <= tol * s && r.identity_residual <= tol * std::max(1.0, std::hypot(g_u[0], g_u[1])) &&
           r.nu0_difference <= tol && r.P0_difference <= tol * std::max(1.0, std::fabs(P_u));
  return r;
}

namespace {

double rel_dev(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

HPoint random_translation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  return {d(rng), d(rng), d(rng)};
}

}  // namespace

InvarianceReport isometry_invariance_curve(const CurveModel& gamma, const std::vector<double>& ts,
                                           int transforms, unsigned seed, double dilation) {
  InvarianceReport r;
  r.transforms = transforms;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const double tau_h = 1e-10;
  for (int k = 0; k < transforms; ++k) {
    const CurveModel tr = gamma.left_translated(random_translation(rng));
    const CurveModel ro = gamma.rotated(angle(rng));
    for (double t : ts) {
      const CurvePoint c = gamma(t);
      const PointClass pc = classify_curve_point(c, tau_h);
      const double base = k0_value(c, tau_h);
      for (const CurveModel* m : {&tr, &ro}) {
        const CurvePoint ct = (*m)(t);
        if (classify_curve_point(ct, tau_h).kind != pc.kind) {
          r.skipped.push_back("classification changed at t=" + std::to_string(t));
          continue;
        }
        const double dev = rel_dev(k0_value(ct, tau_h), base);
        double& slot = (m == &tr) ? r.max_translation_dev : r.max_rotation_dev;
        slot = std::max(slot, dev);
      }
      ++r.samples;
    }
  }
  const CurveModel di = gamma.dilated(dilation);
  for (double t : ts) {
    const CurvePoint c = gamma(t);
    r.max_dilation_dev = std::max(r.max_dilation_dev, rel_dev(k0_value(di(t), tau_h), k0_value(c, tau_h) / dilation));
  }
  return r;
}

InvarianceReport isometry_invariance_surface(const ScalarField& u, const std::vector<HPoint>& points,
                                             int transforms, unsigned seed, double dilation) {
  InvarianceReport r;
  r.transforms = transforms;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < transforms; ++k) {
    const HPoint g = random_translation(rng);
    const double th = angle(rng);
    const ScalarField ut = translate_field(u, g);
    const ScalarField ur = rotate_field(u, th);
    for (const HPoint& p : points) {
      const double base = K0_value(u, p);
      r.max_translation_dev = std::max(r.max_translation_dev, rel_dev(K0_value(ut, group_mul(g, p)), base));
      r.max_rotation_dev = std::max(r.max_rotation_dev, rel_dev(K0_value(ur, rotate_x3(th, p)), base));
      ++r.samples;
    }
  }
  const ScalarField ud = dilate_field(u, dilation);
  for (const HPoint& p : points) {
    const double base = K0_value(u, p);
    if (base != 0.0) r.dilation_ratios.push_back(K0_value(ud, dilate(dilation, p)) / base);
  }
  return r;
}

InvarianceReport isometry_invariance_pair(const ScalarField& u, const CurveModel& gamma,
                                          const std::vector<double>& ts, int transforms, unsigned seed) {
  InvarianceReport r;
  r.transforms = transforms;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const SurfaceTolerances tol{1e-8, 1e-8};
  for (int k = 0; k < transforms; ++k) {
    const HPoint g = random_translation(rng);
    const double th = angle(rng);
    const ScalarField ut = translate_field(u, g), ur = rotate_field(u, th);
    const CurveModel ct = gamma.left_translated(g), cr = gamma.rotated(th);
    for (double t : ts) {
      const double base = k0s_value(u, gamma(t), 1e-10, tol);
      r.max_translation_dev = std::max(r.max_translation_dev, rel_dev(k0s_value(ut, ct(t), 1e-10, tol), base));
      r.max_rotation_dev = std::max(r.max_rotation_dev, rel_dev(k0s_value(ur, cr(t), 1e-10, tol), base));
      ++r.samples;
    }
  }
  return r;
}

SummabilityReport summability_diagnostic(const ScalarField& u, const Patch& chart, double cv, double cw,
                                         const std::vector<double>& radii, const QuadratureSpec& spec,
                                         double tau_char) {
  SummabilityReport r;
  const HPoint centre = HPoint::from(chart(cv, cw).f);
  if (!classify_surface_point(u, centre, tau_char).characteristic() || radii.size() < 2) {
    r.trend = "empty";
    return r;
  }
  r.has_characteristic_point = true;
  r.radii = radii;
  double total = 0;
  for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
    AnnulusDomain an{cv, cw, radii[k + 1], radii[k], 0.0, 2 * std::numbers::pi, false};
    const double I = perimeter_integral_parametric(
                         chart, [&](const PatchPoint& pp, double, double) { return std::fabs(K0_value(u, HPoint::from(pp.f))); },
                         an, spec)
                         .value;
    r.annulus_integrals.push_back(I);
    total += I;
    r.cumulative.push_back(total);
  }
  for (std::size_t k = 1; k < r.annulus_integrals.size(); ++k)
    r.ratios.push_back(r.annulus_integrals[k] / r.annulus_integrals[k - 1]);
  r.trend = (!r.ratios.empty() && r.ratios.back() < 0.9) ? "converging" : "diverging";
  return r;
}

}  // namespace heis
