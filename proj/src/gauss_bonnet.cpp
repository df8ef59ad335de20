#include "heisgeom/gauss_bonnet.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

namespace heis {

namespace {

struct ParamPoint {
  double v, w;
};

class DomainView {
 public:
  DomainView(const Domain2D& d, int grid) : d_(d), grid_(grid) {
    if (const auto* r = std::get_if<RectDomain>(&d)) {
      h_ = std::max(r->v1 - r->v0, r->w1 - r->w0) / grid;
    } else {
      const auto& a = std::get<AnnulusDomain>(d);
      h_ = a.r1 / grid;
    }
  }

  /// Node (i, j) of the scan grid, including the excised part of an annulus.
  ParamPoint node(int i, int j) const {
    if (const auto* r = std::get_if<RectDomain>(&d_))
      return {r->v0 + (r->v1 - r->v0) * i / grid_, r->w0 + (r->w1 - r->w0) * j / grid_};
    const auto& a = std::get<AnnulusDomain>(d_);
    const double r0 = a.excise ? 0.0 : a.r0;
    const double rho = r0 + (a.r1 - r0) * i / grid_;
    const double th = a.theta0 + (a.theta1 - a.theta0) * j / grid_;
    return {a.cv + rho * std::cos(th), a.cw + rho * std::sin(th)};
  }

  ParamPoint project(ParamPoint p) const {
    if (const auto* r = std::get_if<RectDomain>(&d_))
      return {std::clamp(p.v, r->v0, r->v1), std::clamp(p.w, r->w0, r->w1)};
    const auto& a = std::get<AnnulusDomain>(d_);
    const double r0 = a.excise ? 0.0 : a.r0;
    double dv = p.v - a.cv, dw = p.w - a.cw;
    double rho = std::hypot(dv, dw);
    if (rho == 0.0) return r0 > 0 ? ParamPoint{a.cv + r0, a.cw} : p;
    double th = std::atan2(dw, dv);
    const double span = a.theta1 - a.theta0;
    if (span < 2 * std::numbers::pi - 1e-12) {
      while (th < a.theta0) th += 2 * std::numbers::pi;
      while (th > a.theta0 + 2 * std::numbers::pi) th -= 2 * std::numbers::pi;
      if (th > a.theta1) th = (th - a.theta1 < a.theta0 + 2 * std::numbers::pi - th) ? a.theta1 : a.theta0;
    }
    rho = std::clamp(rho, r0, a.r1);
    return {a.cv + rho * std::cos(th), a.cw + rho * std::sin(th)};
  }

  double spacing() const { return h_; }
  int grid() const { return grid_; }

 private:
  Domain2D d_;
  int grid_;
  double h_;
};

double scan_ratio(const ScalarField& u, const Patch& chart, ParamPoint p) {
  const HPoint x = HPoint::from(chart(p.v, p.w).f);
  try {
    return characteristic_ratio(u.jet<1>(x), x);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
}

ParamPoint pattern_search(const ScalarField& u, const Patch& chart, const DomainView& dom, ParamPoint p,
                          double& value) {
  double step = dom.spacing();
  value = scan_ratio(u, chart, p);
  static const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (int it = 0; it < 4000 && step > 1e-14 && value > 0; ++it) {
    bool moved = false;
    for (const auto& d : dirs) {
      const ParamPoint q = dom.project({p.v + step * d[0], p.w + step * d[1]});
      const double fq = scan_ratio(u, chart, q);
      if (fq < value) {
        value = fq;
        p = q;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return p;
}

double distance_to_segment(const HPoint& x, const HPoint& a, const HPoint& b) {
  const Vec3d ab{b.x1 - a.x1, b.x2 - a.x2, b.x3 - a.x3}, ax{x.x1 - a.x1, x.x2 - a.x2, x.x3 - a.x3};
  const double len2 = dot(ab, ab);
  const double s = len2 > 0 ? std::clamp(dot(ab, ax) / len2, 0.0, 1.0) : 0.0;
  return norm(Vec3d{ax[0] - s * ab[0], ax[1] - s * ab[1], ax[2] - s * ab[2]});
}

double hdist(const HPoint& a, const HPoint& b) { return std::sqrt(std::pow(a.x1 - b.x1, 2) + std::pow(a.x2 - b.x2, 2) + std::pow(a.x3 - b.x3, 2)); }

int sign_of(double x) { return x >= 0 ? 1 : -1; }

}  // namespace

std::vector<CharacteristicCandidate> characteristic_scan(const ScalarField& u, const Patch& chart,
                                                         const Domain2D& domain, const ScanSpec& spec) {
  const DomainView dom(domain, spec.grid);
  const int n = spec.grid + 1;
  std::vector<double> ratio(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ratio[i * n + j] = scan_ratio(u, chart, dom.node(i, j));
  auto at = [&](int i, int j) { return ratio[i * n + j]; };

  struct Refined {
    ParamPoint p;
    double value;
  };
  std::vector<Refined> refined;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = at(i, j);
      if (!(r <= spec.seed_ratio)) continue;
      const bool min_i = (i == 0 || r <= at(i - 1, j)) && (i == n - 1 || r <= at(i + 1, j));
      const bool min_j = (j == 0 || r <= at(i, j - 1)) && (j == n - 1 || r <= at(i, j + 1));
      if (!min_i && !min_j) continue;
      double value;
      const ParamPoint p = pattern_search(u, chart, dom, dom.node(i, j), value);
      if (value <= spec.accept) refined.push_back({p, value});
    }
  }

  // single-linkage clustering in chart parameters
  const double link = 2.5 * dom.spacing();
  std::vector<int> label(refined.size(), -1);
  int clusters = 0;
  for (std::size_t a = 0; a < refined.size(); ++a) {
    if (label[a] >= 0) continue;
    label[a] = clusters;
    std::vector<std::size_t> stack{a};
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < refined.size(); ++b) {
        if (label[b] >= 0) continue;
        if (std::hypot(refined[b].p.v - refined[k].p.v, refined[b].p.w - refined[k].p.w) <= link) {
          label[b] = clusters;
          stack.push_back(b);
        }
      }
    }
    ++clusters;
  }

  std::vector<CharacteristicCandidate> out;
  for (int c = 0; c < clusters; ++c) {
    CharacteristicCandidate cand;
    cand.ratio = std::numeric_limits<double>::infinity();
    std::vector<ParamPoint> pts;
    for (std::size_t k = 0; k < refined.size(); ++k) {
      if (label[k] != c) continue;
      pts.push_back(refined[k].p);
      const HPoint x = HPoint::from(chart(refined[k].p.v, refined[k].p.w).f);
      cand.members.push_back(x);
      if (refined[k].value < cand.ratio) {
        cand.ratio = refined[k].value;
        cand.point = x;
      }
    }
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        cand.extent = std::max(cand.extent, std::hypot(pts[a].v - pts[b].v, pts[a].w - pts[b].w));
    cand.curve_like = cand.extent > 4 * dom.spacing();
    out.push_back(std::move(cand));
  }
  return out;
}

BoundaryTermResult boundary_term(const CurveModel& gamma, const ScalarField& u, int orientation,
                                 const QuadratureSpec& spec, const SceneTolerances& tol) {
  BoundaryTermResult r;
  const int N = 1000;
  for (int k = 0; k <= N; ++k) {
    const double t = gamma.t0() + (gamma.t1() - gamma.t0()) * k / N;
    const PointClass pc = classify_curve_point(gamma(t), tol.tau_h);
    ++r.samples;
    if (pc.ambiguous) ++r.ambiguous;
    if (pc.horizontal()) ++r.horizontal;
  }
  if (r.ambiguous > 0.01 * r.samples)
    throw ClassificationError("boundary classification ambiguous on more than 1% of the parameter interval");
  const SurfaceTolerances st{tol.tau_char, tol.tau_on};
  const QuadResult q = integrate_1d(
      [&](double t) { return boundary_density(u, gamma(t), tol.tau_h, st); }, gamma.t0(), gamma.t1(), spec);
  r.value = orientation * q.value;
  r.error = q.error;
  r.evaluations = q.evaluations;
  return r;
}

double orientation_reference_value() {
  static const double value = [] {
    const ScalarField u = ScalarField::from([](const auto& x) { return x[2] - 0.5 * x[0] * x[1]; }, "x3 - x1 x2/2");
    const CurveModel g = CurveModel::from(
        [](const Jet2& t) { return Vec3<Jet2>{cos(t), sin(t), 0.25 * sin(2.0 * t)}; }, 0.0, 2 * std::numbers::pi);
    return boundary_term(g, u, 1).value;
  }();
  return value;
}

GaussBonnetReport gauss_bonnet_defect(const SceneSurface& scene, const GaussBonnetOptions& opt) {
  scene.validate();
  opt.spec.validate();
  GaussBonnetReport rep;
  rep.scene = scene.name;
  rep.tolerance = scene.tolerances.defect;
  rep.orientation_check = std::fabs(orientation_reference_value() - 4.0) < 1e-6;
  if (!rep.orientation_check) throw GeometryError("boundary orientation self-check failed");
  const SurfaceTolerances st{scene.tolerances.tau_char, scene.tolerances.tau_on};

  bool declared_curve = false;
  for (const auto& d : scene.characteristic) declared_curve |= d.kind == DeclaredCharacteristic::Curve;
  rep.conforming = !declared_curve;

  if (opt.run_scan) {
    for (std::size_t c = 0; c < scene.charts.size(); ++c) {
      for (auto cand : characteristic_scan(scene.u, scene.charts[c].patch, scene.charts[c].domain, opt.scan)) {
        cand.chart = c;
        for (const auto& d : scene.characteristic) {
          bool ok = true;
          for (const HPoint& m : cand.members) {
            const double dist = d.kind == DeclaredCharacteristic::Point ? hdist(m, d.from) : distance_to_segment(m, d.from, d.to);
            if (dist > 1e-5 * std::max(1.0, std::hypot(m.x1, m.x2))) ok = false;
          }
          if (ok) cand.declared = true;
        }
        if (!cand.declared) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "undeclared %s characteristic locus near (%.6g, %.6g, %.6g) in chart %zu",
                        cand.curve_like ? "curve-like" : "isolated", cand.point.x1, cand.point.x2, cand.point.x3, c);
          throw UndeclaredCharacteristicError(buf);
        }
        rep.characteristic.push_back(std::move(cand));
      }
    }
  }

  // isolated declared points should sit at the centre of an excised chart
  for (const auto& d : scene.characteristic) {
    if (d.kind != DeclaredCharacteristic::Point) continue;
    bool covered = false;
    for (const auto& ch : scene.charts)
      if (const auto* a = std::get_if<AnnulusDomain>(&ch.domain); a && a->excise)
        covered |= hdist(HPoint::from(ch.patch(a->cv, a->cw).f), d.from) < 1e-9;
    if (!covered) rep.warnings.push_back("declared characteristic point not excised by any chart");
  }
  rep.handling = declared_curve ? "declared-curve" : (scene.has_excision() ? "excised" : "none");
  if (declared_curve) rep.warnings.push_back("characteristic set is one-dimensional: theorem hypotheses do not hold");

  // pointwise K0 sample
  for (const auto& ch : scene.charts) {
    const DomainView dom(ch.domain, opt.sample_grid);
    for (int i = 0; i <= opt.sample_grid; ++i) {
      for (int j = 0; j <= opt.sample_grid; ++j) {
        ParamPoint p = dom.node(i, j);
        if (const auto* a = std::get_if<AnnulusDomain>(&ch.domain)) {
          const double r0 = a->excise ? (scene.eps.empty() ? opt.spec.eps.back() : scene.eps.back()) : a->r0;
          const double rho = r0 + (a->r1 - r0) * (i + 0.5) / (opt.sample_grid + 1);
          const double th = a->theta0 + (a->theta1 - a->theta0) * j / opt.sample_grid;
          p = {a->cv + rho * std::cos(th), a->cw + rho * std::sin(th)};
        }
        const HPoint x = HPoint::from(ch.patch(p.v, p.w).f);
        if (classify_surface_point(scene.u, x, 1e-6).characteristic()) continue;
        rep.max_abs_K0_sampled = std::max(rep.max_abs_K0_sampled, std::fabs(K0_value(scene.u, x, st)));
      }
    }
  }

  // outer boundaries
  for (const auto& b : scene.boundaries) {
    const BoundaryTermResult br = boundary_term(b.curve, scene.u, b.orientation, opt.spec, scene.tolerances);
    rep.boundary_integrals.push_back(br.value);
    rep.boundary_errors.push_back(br.error);
  }
  double outer = 0, outer_err = 0;
  for (std::size_t k = 0; k < rep.boundary_integrals.size(); ++k) {
    outer += rep.boundary_integrals[k];
    outer_err += rep.boundary_errors[k];
  }

  // surface integrals per exclusion radius
  const bool excised = scene.has_excision();
  if (excised) rep.eps = scene.eps.empty() ? opt.spec.eps : scene.eps;
  else rep.eps = {0.0};
  std::atomic<long> skipped{0};
  for (double eps : rep.eps) {
    EpsTraceEntry e;
    e.eps = eps;
    for (const auto& ch : scene.charts) {
      const QuadResult q = perimeter_integral_parametric(
          ch.patch,
          [&](const PatchPoint& pp, double, double) {
            const HPoint x = HPoint::from(pp.f);
            try {
              return K0_value(scene.u, x, st);
            } catch (const GeometryError&) {
              if (!declared_curve) throw;
              ++skipped;
              return 0.0;
            }
          },
          ch.domain, opt.spec, eps);
      e.surface += q.value;
      e.surface_error += q.error;
      if (const auto* a = std::get_if<AnnulusDomain>(&ch.domain); a && a->excise) {
        const double rho = std::max(a->r0, eps);
        const PatchPoint pp = ch.patch(a->cv + rho * std::cos(a->theta0), a->cw + rho * std::sin(a->theta0));
        const Jet<1> uj = scene.u.jet<1>(HPoint::from(pp.f));
        const int s = sign_of(dot(cross(pp.fv, pp.fw), Vec3d{uj.d[0], uj.d[1], uj.d[2]}));
        const CurveModel beta = chart_circle(ch.patch, a->cv, a->cw, rho, a->theta0, a->theta1);
        e.inner_boundary += boundary_term(beta, scene.u, -s, opt.spec, scene.tolerances).value;
      }
    }
    e.total = e.surface + outer + e.inner_boundary;
    rep.trace.push_back(e);
  }
  rep.skipped_nodes = skipped.load();

  if (excised && rep.eps.size() >= 2) {
    std::vector<double> vals;
    for (const auto& e : rep.trace) vals.push_back(e.surface);
    const ExtrapolationResult ex = extrapolate_values(rep.eps, vals);
    rep.surface_integral = ex.value;
    rep.surface_error = ex.error + rep.trace.back().surface_error;
    // log-log slope of the distance to the extrapolated value
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& e : rep.trace) {
      const double d = std::fabs(e.surface - ex.value);
      if (d <= 0) continue;
      const double lx = std::log(e.eps), ly = std::log(d);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++m;
    }
    rep.eps_exponent = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
  } else {
    rep.surface_integral = rep.trace.back().surface;
    rep.surface_error = rep.trace.back().surface_error;
    rep.eps_exponent = std::numeric_limits<double>::quiet_NaN();
  }

  rep.defect = rep.surface_integral + outer;
  rep.defect_error = rep.surface_error + outer_err;
  if (scene.expected_defect) {
    rep.expected = *scene.expected_defect;
  } else if (!rep.conforming) {
    rep.has_target = false;
    rep.warnings.push_back("no expected defect for a non-conforming scene");
  }
  rep.pass = !rep.has_target || std::fabs(rep.defect - rep.expected) <= rep.tolerance;
  return rep;
}

ScaledGaussBonnet gauss_bonnet_L(const SceneSurface& scene, double L, const QuadratureSpec& spec) {
  scene.validate();
  if (scene.has_excision()) throw GeometryError("finite-L Gauss-Bonnet needs a scene without excisions");
  const SurfaceTolerances st{scene.tolerances.tau_char, scene.tolerances.tau_on};
  ScaledGaussBonnet r;
  r.L = L;
  for (const auto& ch : scene.charts) {
    r.surface += integrate_2d(
                     [&](double v, double w) {
                       const PatchPoint pp = ch.patch(v, w);
                       return gauss_curvature_L(scene.u, HPoint::from(pp.f), L, st) * perimeter_density_L(pp, L);
                     },
                     ch.domain, spec)
                     .value;
  }
  const double sL = std::sqrt(L);
  for (const auto& b : scene.boundaries) {
    r.boundary += b.orientation *
                  integrate_1d(
                      [&](double t) {
                        const CurvePoint c = b.curve(t);
                        return signed_geodesic_curvature_L(scene.u, c, L, st) *
                               length_density(c, MeasureKind::riemannian(L)) / sL;
                      },
                      b.curve.t0(), b.curve.t1(), spec)
                      .value;
  }
  return r;
}

}  // namespace heis
