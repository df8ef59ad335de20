#include "heisgeom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "heisgeom/parallel.hpp"

namespace heis {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

struct Cell1 {
  double a, b, value, error;
};

Cell1 eval_cell_1d(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& hi = gauss_legendre(n);
  const auto& lo = gauss_legendre(std::max(1, n / 2));
  const double m = 0.5 * (a + b), r = 0.5 * (b - a);
  double qh = 0, ql = 0;
  for (int i = 0; i < n; ++i) qh += hi.weights[i] * f(m + r * hi.nodes[i]);
  for (int i = 0; i < n / 2; ++i) ql += lo.weights[i] * f(m + r * lo.nodes[i]);
  return {a, b, r * qh, std::fabs(r * (qh - ql))};
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Cell2 {
  double a, b, c, d;  // [a,b] x [c,d] in the domain's own coordinates
  int order;
  double value, error;
  double err_s, err_t;  // directional parts of the error estimate
};

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex m;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

void QuadratureSpec::validate() const {
  if (order < 2 || singular_order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw std::invalid_argument("quadrature tolerances must be positive");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0)) throw std::invalid_argument("exclusion radii must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1]))
      throw std::invalid_argument("exclusion radii must be strictly decreasing");
  }
}

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec, std::vector<double> breakpoints) {
  spec.validate();
  if (a == b) return {};
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);
  std::vector<double> cuts{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);

  const int n = spec.order;
  std::vector<Cell1> cells(cuts.size() - 1);
  parallel_for(cells.size(), [&](std::size_t i) { cells[i] = eval_cell_1d(f, cuts[i], cuts[i + 1], n); });
  long evals = static_cast<long>(cells.size()) * (n + n / 2);
  const double min_width = 1e-13 * (b - a);

  while (true) {
    double total = 0, err = 0;
    for (const auto& c : cells) total += c.value, err += c.error;
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    if (err <= tol) break;
    std::vector<std::size_t> split;
    const double share = tol / static_cast<double>(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].error > share && cells[i].b - cells[i].a > min_width) split.push_back(i);
    if (split.empty()) break;
    if (static_cast<int>(cells.size() + split.size()) > spec.max_cells)
      throw QuadratureError("integrate_1d: tolerance not met within " +
                            std::to_string(spec.max_cells) + " cells (error estimate " +
                            sci(err) + ")");
    std::vector<Cell1> fresh(2 * split.size());
    parallel_for(split.size(), [&](std::size_t k) {
      const Cell1& c = cells[split[k]];
      const double m = 0.5 * (c.a + c.b);
      fresh[2 * k] = eval_cell_1d(f, c.a, m, n);
      fresh[2 * k + 1] = eval_cell_1d(f, m, c.b, n);
    });
    evals += static_cast<long>(fresh.size()) * (n + n / 2);
    std::vector<Cell1> next;
    next.reserve(cells.size() + split.size());
    std::size_t s = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (s < split.size() && split[s] == i) {
        next.push_back(fresh[2 * s]);
        next.push_back(fresh[2 * s + 1]);
        ++s;
      } else {
        next.push_back(cells[i]);
      }
    }
    cells.swap(next);
  }
  QuadResult r;
  for (const auto& c : cells) r.value += c.value, r.error += c.error;
  r.value *= sign;
  r.evaluations = evals;
  r.cells = static_cast<int>(cells.size());
  return r;
}

QuadResult integrate_2d(const std::function<double(double, double)>& f, const Domain2D& domain,
                        const QuadratureSpec& spec, double eps) {
  spec.validate();
  // Domain coordinates (s, t) and the map to (v, w) with its Jacobian.
  double s0, s1, t0, t1;
  std::function<double(double, double)> g;
  bool singular_edge = false;
  if (const auto* rect = std::get_if<RectDomain>(&domain)) {
    s0 = rect->v0, s1 = rect->v1, t0 = rect->w0, t1 = rect->w1;
    g = f;
  } else {
    const auto& an = std::get<AnnulusDomain>(domain);
    s0 = an.excise ? std::max(an.r0, eps) : an.r0;
    s1 = an.r1, t0 = an.theta0, t1 = an.theta1;
    singular_edge = an.excise;
    const double cv = an.cv, cw = an.cw;
    g = [&f, cv, cw](double rho, double th) {
      return rho * f(cv + rho * std::cos(th), cw + rho * std::sin(th));
    };
  }
  if (!(s1 > s0) || !(t1 > t0)) return {};
  const double s_lo = s0;

  auto eval = [&](double a, double b, double c, double d, int n) {
    const auto& hi = gauss_legendre(n);
    const auto& lo = gauss_legendre(n / 2);
    const double ms = 0.5 * (a + b), rs = 0.5 * (b - a), mt = 0.5 * (c + d), rt = 0.5 * (d - c);
    // hi x hi against lo x hi and hi x lo: the two differences estimate the error in each direction
    double qh = 0, qs = 0, qt = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) qh += hi.weights[i] * hi.weights[j] * g(ms + rs * hi.nodes[i], mt + rt * hi.nodes[j]);
    for (int i = 0; i < n / 2; ++i)
      for (int j = 0; j < n; ++j) {
        qs += lo.weights[i] * hi.weights[j] * g(ms + rs * lo.nodes[i], mt + rt * hi.nodes[j]);
        qt += hi.weights[j] * lo.weights[i] * g(ms + rs * hi.nodes[j], mt + rt * lo.nodes[i]);
      }
    const double es = std::fabs(rs * rt * (qh - qs)), et = std::fabs(rs * rt * (qh - qt));
    return Cell2{a, b, c, d, n, rs * rt * qh, es + et, es, et};
  };
  auto order_for = [&](double a) { return (singular_edge && a == s_lo) ? spec.singular_order : spec.order; };

  std::vector<Cell2> cells{eval(s0, s1, t0, t1, order_for(s0))};
  long evals = 0;
  auto count = [&](const Cell2& c) { evals += 2L * c.order * c.order; };
  count(cells[0]);
  const double min_width = 1e-12 * std::max(s1 - s0, t1 - t0);

  while (true) {
    double total = 0, err = 0;
    for (const auto& c : cells) total += c.value, err += c.error;
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    if (err <= tol) break;
    std::vector<std::size_t> split;
    const double share = tol / static_cast<double>(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].error > share && std::max(cells[i].b - cells[i].a, cells[i].d - cells[i].c) > min_width)
        split.push_back(i);
    if (split.empty()) break;
    // split across s, t, or both, whichever carries the error
    std::vector<int> pieces(split.size());
    std::vector<std::size_t> first(split.size() + 1, 0);
    for (std::size_t k = 0; k < split.size(); ++k) {
      const Cell2& c = cells[split[k]];
      pieces[k] = c.err_s > 8 * c.err_t ? 1 : (c.err_t > 8 * c.err_s ? 2 : 3);
      first[k + 1] = first[k] + (pieces[k] == 3 ? 4 : 2);
    }
    if (static_cast<int>(cells.size() + first.back() - split.size()) > spec.max_cells)
      throw QuadratureError("integrate_2d: tolerance not met within " +
                            std::to_string(spec.max_cells) + " cells (error estimate " +
                            sci(err) + ")");
    std::vector<Cell2> fresh(first.back());
    parallel_for(fresh.size(), [&](std::size_t idx) {
      const std::size_t k = std::upper_bound(first.begin(), first.end(), idx) - first.begin() - 1;
      const Cell2& c = cells[split[k]];
      const int q = static_cast<int>(idx - first[k]);
      const double ms = 0.5 * (c.a + c.b), mt = 0.5 * (c.c + c.d);
      double a = c.a, b = c.b, lo = c.c, hi = c.d;
      if (pieces[k] == 1) {
        (q ? a : b) = ms;
      } else if (pieces[k] == 2) {
        (q ? lo : hi) = mt;
      } else {
        a = (q & 1) ? ms : c.a, b = (q & 1) ? c.b : ms;
        lo = (q & 2) ? mt : c.c, hi = (q & 2) ? c.d : mt;
      }
      fresh[idx] = eval(a, b, lo, hi, order_for(a));
    });
    for (const auto& c : fresh) count(c);
    std::vector<Cell2> next;
    next.reserve(cells.size() + fresh.size());
    std::size_t s = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (s < split.size() && split[s] == i) {
        for (std::size_t q = first[s]; q < first[s + 1]; ++q) next.push_back(fresh[q]);
        ++s;
      } else {
        next.push_back(cells[i]);
      }
    }
    cells.swap(next);
  }
  QuadResult r;
  for (const auto& c : cells) r.value += c.value, r.error += c.error;
  r.evaluations = evals;
  r.cells = static_cast<int>(cells.size());
  return r;
}

double length_density(const CurvePoint& c, const MeasureKind& kind) {
  const double w = contact_form(c.point(), c.dx);
  switch (kind.kind) {
    case MeasureKind::RiemannianLength:
      return std::sqrt(c.dx[0] * c.dx[0] + c.dx[1] * c.dx[1] + kind.L * w * w);
    case MeasureKind::SubRiemannianBoundary:
      return std::fabs(w);
    default:
      throw std::invalid_argument("length_integral: measure kind is not a curve measure");
  }
}

QuadResult length_integral(const CurveModel& gamma,
                           const std::function<double(double, const CurvePoint&)>& f,
                           const MeasureKind& kind, const QuadratureSpec& spec) {
  return integrate_1d(
      [&](double t) {
        const CurvePoint c = gamma(t);
        const double rho = length_density(c, kind);
        return rho == 0.0 ? 0.0 : f(t, c) * rho;
      },
      gamma.t0(), gamma.t1(), spec);
}

double perimeter_density(const PatchPoint& pp) {
  const Vec3d n = cross(pp.fv, pp.fw);
  const double a = n[0] - 0.5 * pp.f[1] * n[2];
  const double b = n[1] + 0.5 * pp.f[0] * n[2];
  return std::hypot(a, b);
}

double perimeter_density_L(const PatchPoint& pp, double L) {
  const Vec3d n = cross(pp.fv, pp.fw);
  const double a = n[0] - 0.5 * pp.f[1] * n[2];
  const double b = n[1] + 0.5 * pp.f[0] * n[2];
  return std::sqrt(a * a + b * b + n[2] * n[2] / L);
}

double perimeter_ratio(const ScalarField& u, const HPoint& p) {
  const Jet<1> j = u.jet<1>(p);
  const double x1u = j.d[0] - 0.5 * p.x2 * j.d[2];
  const double x2u = j.d[1] + 0.5 * p.x1 * j.d[2];
  const double g = std::sqrt(j.d[0] * j.d[0] + j.d[1] * j.d[1] + j.d[2] * j.d[2]);
  if (g == 0.0) throw GeometryError("perimeter_integral_implicit: degenerate defining function");
  return std::hypot(x1u, x2u) / g;
}

QuadResult perimeter_integral_parametric(
    const Patch& patch, const std::function<double(const PatchPoint&, double, double)>& integrand,
    const Domain2D& domain, const QuadratureSpec& spec, double eps) {
  return integrate_2d(
      [&](double v, double w) {
        const PatchPoint pp = patch(v, w);
        const double rho = perimeter_density(pp);
        return rho == 0.0 ? 0.0 : integrand(pp, v, w) * rho;
      },
      domain, spec, eps);
}

QuadResult perimeter_integral_implicit(const ScalarField& u, const Patch& chart,
                                       const std::function<double(const HPoint&)>& f,
                                       const Domain2D& domain, const QuadratureSpec& spec,
                                       double eps) {
  return integrate_2d(
      [&](double v, double w) {
        const PatchPoint pp = chart(v, w);
        const double area = norm(cross(pp.fv, pp.fw));
        if (area == 0.0) throw GeometryError("perimeter_integral_implicit: chart degeneracy");
        const HPoint p = HPoint::from(pp.f);
        return f(p) * perimeter_ratio(u, p) * area;
      },
      domain, spec, eps);
}

ExtrapolationResult extrapolate_values(const std::vector<double>& eps,
                                       const std::vector<double>& values) {
  if (eps.size() != values.size() || eps.empty())
    throw std::invalid_argument("excise_and_extrapolate: need matching non-empty sequences");
  ExtrapolationResult r;
  r.eps = eps;
  r.values = values;
  for (double v : values)
    if (!std::isfinite(v)) throw QuadratureError("excise_and_extrapolate: non-finite family value");
  const std::size_t n = eps.size();
  if (n == 1) {
    r.value = values[0];
    r.error = std::fabs(values[0]);
    return r;
  }
  auto rich = [&](std::size_t a, std::size_t b) {
    return (eps[a] * values[b] - eps[b] * values[a]) / (eps[a] - eps[b]);
  };
  r.value = rich(n - 2, n - 1);
  r.error = n >= 3 ? std::fabs(r.value - rich(n - 3, n - 2)) : std::fabs(values[n - 1] - values[n - 2]);
  if (n >= 3) {
    const double d1 = std::fabs(values[n - 2] - values[n - 3]);
    const double d2 = std::fabs(values[n - 1] - values[n - 2]);
    const double floor = 1e-12 * std::max(1.0, std::fabs(values[n - 1]));
    if (d2 > 1.5 * d1 && d2 > floor)
      throw QuadratureError("excise_and_extrapolate: family does not converge as eps decreases");
  }
  return r;
}

ExtrapolationResult excise_and_extrapolate(const std::function<double(double)>& family,
                                           const std::vector<double>& eps,
                                           const std::function<double(double)>& correction) {
  for (std::size_t i = 0; i < eps.size(); ++i)
    if (!(eps[i] > 0) || (i > 0 && !(eps[i] < eps[i - 1])))
      throw std::invalid_argument("excise_and_extrapolate: eps must be positive and strictly decreasing");
  std::vector<double> values;
  values.reserve(eps.size());
  for (double e : eps) values.push_back(family(e));
  ExtrapolationResult r = extrapolate_values(eps, values);
  if (correction)
    for (double e : eps) r.corrections.push_back(correction(e));
  return r;
}

}  // namespace heis
