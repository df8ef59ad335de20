#include "heisgeom/steiner.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "heisgeom/riem.hpp"

namespace heis {

double SteinerCoefficients::operator[](int s) const {
  switch (s) {
    case 0:
      return A;
    case 1:
      return B;
    case 2:
      return C;
    case 3:
      return D;
    default:
      return E;
  }
}

SteinerCoefficients coefficients_at(const ScalarField& delta, const HPoint& p) {
  const HorizontalJet h = horizontal_jet(delta, p);
  SteinerCoefficients c;
  c.A = h.XXu[0][0] + h.XXu[1][1];
  c.B = -h.Xu[2] * h.Xu[2];
  c.C = h.Xu[0] * h.XXu[2][1] - h.Xu[1] * h.XXu[2][0];
  c.D = h.XXu[2][2];
  c.E = h.XXu[2][0] * h.XXu[2][0] + h.XXu[2][1] * h.XXu[2][1];
  c.horizontal_gradient_norm = std::hypot(h.Xu[0], h.Xu[1]);
  return c;
}

bool GPolynomial::Order::operator()(const Monomial& a, const Monomial& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return a > b;
}

void GPolynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GPolynomial GPolynomial::constant(const Rational& c) {
  GPolynomial p;
  p.add_term({0, 0, 0, 0, 0}, c);
  return p;
}

GPolynomial GPolynomial::symbol(Symbol s) {
  GPolynomial p;
  Monomial m{0, 0, 0, 0, 0};
  m[s] = 1;
  p.add_term(m, 1);
  return p;
}

GPolynomial& GPolynomial::operator+=(const GPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GPolynomial& GPolynomial::operator-=(const GPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GPolynomial operator*(const GPolynomial& a, const GPolynomial& b) {
  GPolynomial r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      GPolynomial::Monomial m;
      for (int i = 0; i < 5; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

GPolynomial operator*(const Rational& c, const GPolynomial& a) {
  GPolynomial r;
  for (const auto& [m, v] : a.terms_) r.add_term(m, c * v);
  return r;
}

int GPolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

double GPolynomial::evaluate(const SteinerCoefficients& c) const {
  double s = 0;
  for (const auto& [m, v] : terms_) {
    double t = static_cast<double>(v);
    for (int i = 0; i < 5; ++i)
      for (int k = 0; k < m[i]; ++k) t *= c[i];
    s += t;
  }
  return s;
}

std::string GPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names = "ABCDE";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = std::accumulate(m.begin(), m.end(), 0) > 0;
    bool need_star = false;
    if (!(unit && mag == 1)) {
      os << mag;
      need_star = true;
    }
    for (int i = 0; i < 5; ++i) {
      for (int k = 0; k < m[i]; ++k) {
        if (need_star) os << "*";
        os << names[i];
        need_star = true;
      }
    }
  }
  return os.str();
}

GPolynomial g_symbol(GPolynomial::Symbol s) {
  using P = GPolynomial;
  const P A = P::symbol(P::A), B = P::symbol(P::B), C = P::symbol(P::C), D = P::symbol(P::D), E = P::symbol(P::E);
  switch (s) {
    case P::A:
      return B + Rational(2) * C - A * A;
    case P::B:
      return P();
    case P::C:
      return D - A * C;
    case P::D:
      return Rational(-1) * E;
    case P::E:
      return Rational(-2) * A * E + Rational(2) * C * D;
  }
  return P();
}

GPolynomial g_apply(const GPolynomial& p) {
  GPolynomial r;
  for (const auto& [m, c] : p.terms()) {
    for (int s = 0; s < 5; ++s) {
      if (m[s] == 0) continue;
      GPolynomial::Monomial rest = m;
      rest[s] -= 1;
      GPolynomial mono;
      mono += GPolynomial::constant(c * m[s]);
      for (int i = 0; i < 5; ++i)
        for (int k = 0; k < rest[i]; ++k) mono = mono * GPolynomial::symbol(static_cast<GPolynomial::Symbol>(i));
      r += mono * g_symbol(static_cast<GPolynomial::Symbol>(s));
    }
  }
  return r;
}

GPolynomial iterated_divergence(int i) {
  if (i < 0) throw std::invalid_argument("iterated_divergence: negative order");
  static std::mutex m;
  static std::vector<GPolynomial> cache{GPolynomial::constant(1)};
  std::lock_guard<std::mutex> lock(m);
  while (static_cast<int>(cache.size()) <= i) {
    const GPolynomial& h = cache.back();
    cache.push_back(h * GPolynomial::symbol(GPolynomial::A) + g_apply(h));
  }
  return cache[i];
}

GPolynomial simplified_coefficient(int power) {
  using P = GPolynomial;
  if (power < 1) throw std::invalid_argument("simplified_coefficient: power must be at least 1");
  if (power == 1) return P::constant(1);
  if (power == 2) return P::symbol(P::A);
  if (power == 3) return P::symbol(P::C);
  const int j = power % 2 == 0 ? (power - 2) / 2 : (power - 3) / 2;
  P Bj = P::constant(1);
  for (int k = 0; k < j - 1; ++k) Bj = Bj * P::symbol(P::B);
  if (power % 2 == 0) return Bj * P::symbol(P::D);
  return Bj * (P::symbol(P::A) * P::symbol(P::D) - P::symbol(P::E));
}

namespace {

Rational inverse_factorial(int k) {
  boost::multiprecision::cpp_int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(1) / Rational(f);
}

SteinerTerm integrate_term(const SceneSurface& region, int power, const GPolynomial& poly, const QuadratureSpec& spec) {
  SteinerTerm t;
  t.power = power;
  t.polynomial = poly.to_string();
  t.inverse_factorial = static_cast<double>(inverse_factorial(power));
  if (poly.is_zero()) return t;
  for (const auto& ch : region.charts) {
    const QuadResult q = perimeter_integral_parametric(
        ch.patch,
        [&](const PatchPoint& pp, double, double) { return poly.evaluate(coefficients_at(region.delta, HPoint::from(pp.f))); },
        ch.domain, spec);
    t.integral += q.value;
    t.error += q.error;
  }
  return t;
}

double series_value(const std::vector<SteinerTerm>& terms, double base, double eps) {
  double s = base;
  for (const auto& t : terms) s += t.integral * t.inverse_factorial * std::pow(eps, t.power);
  return s;
}

}  // namespace

SteinerReport steiner_series(const SceneSurface& region, int order, const std::vector<double>& eps,
                             const SteinerOptions& opt) {
  if (!region.delta.valid()) throw SceneError("steiner: region has no distance function delta");
  if (order < 1) throw std::invalid_argument("steiner: order must be at least 1");
  SteinerReport r;
  r.region = region.name;
  r.order = order;
  r.eps = eps;
  r.tolerance = opt.tolerance;
  r.has_volume = region.volume.has_value();
  r.volume = region.volume.value_or(0.0);

  // eikonal and non-characteristic sampling of the boundary charts
  for (const auto& ch : region.charts) {
    for (int a = 0; a <= opt.sample_grid; ++a) {
      for (int b = 0; b <= opt.sample_grid; ++b) {
        double v, w;
        if (const auto* rd = std::get_if<RectDomain>(&ch.domain)) {
          v = rd->v0 + (rd->v1 - rd->v0) * a / opt.sample_grid;
          w = rd->w0 + (rd->w1 - rd->w0) * b / opt.sample_grid;
        } else {
          const auto& an = std::get<AnnulusDomain>(ch.domain);
          const double rho = an.r0 + (an.r1 - an.r0) * a / opt.sample_grid;
          const double th = an.theta0 + (an.theta1 - an.theta0) * b / opt.sample_grid;
          v = an.cv + rho * std::cos(th);
          w = an.cw + rho * std::sin(th);
        }
        const HPoint p = HPoint::from(ch.patch(v, w).f);
        const SteinerCoefficients c = coefficients_at(region.delta, p);
        if (c.horizontal_gradient_norm <= opt.tau_char) throw GeometryError("steiner: characteristic boundary point");
        r.max_eikonal_defect = std::max(r.max_eikonal_defect, std::fabs(c.horizontal_gradient_norm - 1.0));
      }
    }
  }
  if (r.max_eikonal_defect > opt.tau_eik)
    r.warnings.push_back("delta is not eikonal on the boundary: max | ||grad_H delta|| - 1 | = " +
                         std::to_string(r.max_eikonal_defect));

  for (int k = 1; k <= order; ++k) {
    r.raw.push_back(integrate_term(region, k, iterated_divergence(k - 1), opt.spec));
    r.simplified.push_back(integrate_term(region, k, simplified_coefficient(k), opt.spec));
  }
  for (double e : eps) {
    r.raw_values.push_back(series_value(r.raw, r.volume, e));
    r.simplified_values.push_back(series_value(r.simplified, r.volume, e));
    r.differences.push_back(r.simplified_values.back() - r.raw_values.back());
  }
  if (!region.comparison.empty()) {
    for (std::size_t i = 0; i < eps.size(); ++i) {
      expr::Constants c = region.constants;
      c["eps"] = eps[i];
      const double ref = expr::compile_field(region.comparison, c).value({0, 0, 0});
      r.comparison.push_back(ref);
      r.comparison_error.push_back(std::fabs(r.simplified_values[i] - ref));
      if (r.comparison_error.back() > opt.tolerance * std::max(1.0, std::fabs(ref))) r.pass = false;
    }
  }
  return r;
}

GIdentityReport g_identity_check(const ScalarField& delta, const HPoint& p, double h) {
  if (!(h > 0)) throw std::invalid_argument("g_identity_check: step must be positive");
  auto field = [&](const Vec3d& x) {
    const HPoint y = HPoint::from(x);
    const HorizontalJet j = horizontal_jet(delta, y);
    return Vec3d{j.Xu[0], j.Xu[1], -0.5 * y.x2 * j.Xu[0] + 0.5 * y.x1 * j.Xu[1]};
  };
  auto flow = [&](double s) {
    Vec3d x = p.coords();
    const int n = 8;
    const double dt = s / n;
    for (int k = 0; k < n; ++k) {
      Vec3d y;
      const Vec3d k1 = field(x);
      for (int i = 0; i < 3; ++i) y[i] = x[i] + 0.5 * dt * k1[i];
      const Vec3d k2 = field(y);
      for (int i = 0; i < 3; ++i) y[i] = x[i] + 0.5 * dt * k2[i];
      const Vec3d k3 = field(y);
      for (int i = 0; i < 3; ++i) y[i] = x[i] + dt * k3[i];
      const Vec3d k4 = field(y);
      for (int i = 0; i < 3; ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    for (double c : x)
      if (!std::isfinite(c)) throw GeometryError("g_identity_check: flow left the domain of delta");
    return HPoint::from(x);
  };
  SteinerCoefficients cp, cm;
  try {
    cp = coefficients_at(delta, flow(h));
    cm = coefficients_at(delta, flow(-h));
  } catch (const DomainError& e) {
    throw GeometryError(std::string("g_identity_check: flow left the domain of delta: ") + e.what());
  }
  const SteinerCoefficients c0 = coefficients_at(delta, p);

  GIdentityReport r;
  r.point = p;
  r.h = h;
  r.eikonal = c0.horizontal_gradient_norm;
  r.rows.push_back({"g(1) = 0", 0.0, 0.0, 0.0});
  static const char* names[5] = {"g(A) = B + 2C - A^2", "g(B) = 0", "g(C) = D - AC", "g(D) = -E", "g(E) = -2AE + 2CD"};
  double scale = 1;
  for (int s = 0; s < 5; ++s) {
    GIdentityRow row;
    row.relation = names[s];
    row.finite_difference = (cp[s] - cm[s]) / (2 * h);
    row.algebraic = g_symbol(static_cast<GPolynomial::Symbol>(s)).evaluate(c0);
    row.residual = std::fabs(row.finite_difference - row.algebraic);
    scale = std::max(scale, std::fabs(c0[s]));
    r.max_residual = std::max(r.max_residual, row.residual);
    r.rows.push_back(row);
  }
  r.threshold = std::max(1e-5, h * h * scale);
  r.pass = r.max_residual <= r.threshold;
  return r;
}

}  // namespace heis
