#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "heisgeom/expr.hpp"
#include "heisgeom/steiner.hpp"

using namespace heis;
using P = GPolynomial;
using nlohmann::json;

namespace {

const P A = P::symbol(P::A), B = P::symbol(P::B), C = P::symbol(P::C), D = P::symbol(P::D), E = P::symbol(P::E);

P k(long n) { return P::constant(Rational(n)); }

SceneSurface cylinder() {
  return load_scene(std::string(HEISGEOM_SCENES_DIR) + "/cylinder_steiner.json");
}

}  // namespace

TEST(Coefficients, LinearFunctionHasNone) {
  const ScalarField d = expr::compile_field("x1");
  const SteinerCoefficients c = coefficients_at(d, {0.3, -1.2, 2.0});
  for (int s = 0; s < 5; ++s) EXPECT_EQ(c[s], 0.0);
  EXPECT_EQ(c.horizontal_gradient_norm, 1.0);
}

TEST(Coefficients, CylinderDistance) {
  const ScalarField d = expr::compile_field("sqrt(x1^2 + x2^2) - 1");
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    const HPoint p{u(rng), u(rng), u(rng)};
    const double r = std::hypot(p.x1, p.x2);
    if (r < 0.2) continue;
    const SteinerCoefficients c = coefficients_at(d, p);
    EXPECT_NEAR(c.A, 1 / r, 1e-14);
    EXPECT_EQ(c.B, 0.0);
    EXPECT_NEAR(c.C, 0.0, 1e-15);
    EXPECT_EQ(c.D, 0.0);
    EXPECT_EQ(c.E, 0.0);
    EXPECT_NEAR(c.horizontal_gradient_norm, 1.0, 1e-15);
  }
}

TEST(Coefficients, HandDifferentiatedPolynomial) {
  // delta = x1^2 + x2 x3: X1 delta = 2x1 - x2^2/2, X2 delta = x3 + x1 x2/2, X3 delta = x2
  const ScalarField d = expr::compile_field("x1^2 + x2*x3");
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    const HPoint p{u(rng), u(rng), u(rng)};
    const SteinerCoefficients c = coefficients_at(d, p);
    EXPECT_NEAR(c.A, 2 + p.x1, 1e-13);
    EXPECT_NEAR(c.B, -p.x2 * p.x2, 1e-13);
    EXPECT_NEAR(c.C, 2 * p.x1 - p.x2 * p.x2 / 2, 1e-13);
    EXPECT_NEAR(c.D, 0.0, 1e-13);
    EXPECT_NEAR(c.E, 1.0, 1e-13);
    EXPECT_LE(c.B, 0.0);
    EXPECT_GE(c.E, 0.0);
  }
}

TEST(GAlgebra, Table) {
  EXPECT_TRUE(g_apply(k(1)).is_zero());
  EXPECT_TRUE(g_apply(k(7)).is_zero());
  EXPECT_EQ(g_symbol(P::A), B + k(2) * C - A * A);
  EXPECT_TRUE(g_symbol(P::B).is_zero());
  EXPECT_EQ(g_symbol(P::C), D - A * C);
  EXPECT_EQ(g_symbol(P::D), k(-1) * E);
  EXPECT_EQ(g_symbol(P::E), k(-2) * A * E + k(2) * C * D);
}

TEST(GAlgebra, LeibnizAndLinearity) {
  EXPECT_EQ(g_apply(B * C), B * (D - A * C));
  EXPECT_EQ(g_apply(A * A), k(2) * A * g_symbol(P::A));
  const P p = k(3) * A * D + E - B * B * C;
  const P q = A * E + k(5) * C;
  EXPECT_EQ(g_apply(p + q), g_apply(p) + g_apply(q));
  EXPECT_EQ(g_apply(p * q), g_apply(p) * q + p * g_apply(q));
}

TEST(GAlgebra, CanonicalFormIsStructural) {
  EXPECT_EQ(A * B + C, C + B * A);
  EXPECT_TRUE((A - A).is_zero());
  EXPECT_EQ((A * B).degree(), 2);
  EXPECT_EQ(iterated_divergence(8).to_string(), iterated_divergence(8).to_string());
  EXPECT_EQ(iterated_divergence(8), iterated_divergence(8));
}

TEST(IteratedDivergence, LowOrders) {
  EXPECT_EQ(iterated_divergence(0), k(1));
  EXPECT_EQ(iterated_divergence(1), A);
  EXPECT_EQ(iterated_divergence(2), B + k(2) * C);
  EXPECT_EQ(iterated_divergence(3), A * B + k(2) * D);
  // div4 = div3 A + g(div3) expanded by hand
  EXPECT_EQ(iterated_divergence(4), B * B + k(2) * B * C + k(2) * A * D - k(2) * E);
}

TEST(IteratedDivergence, RecursionAndClosure) {
  for (int i = 1; i <= 12; ++i) {
    const P prev = iterated_divergence(i - 1);
    const P cur = iterated_divergence(i);
    EXPECT_EQ(cur, prev * A + g_apply(prev)) << i;
    EXPECT_FALSE(cur.is_zero()) << i;
    for (const auto& [m, c] : cur.terms()) {
      int deg = 0;
      for (int e : m) {
        EXPECT_GE(e, 0);
        deg += e;
      }
      EXPECT_LE(deg, i);
      EXPECT_NE(c, 0);
    }
  }
}

TEST(IteratedDivergence, ThirdCoefficientAfterGaussBonnet) {
  // the integral of B + C vanishes on closed level sets, so div2 reduces to C
  EXPECT_EQ(iterated_divergence(2) - (B + C), simplified_coefficient(3));
  EXPECT_EQ(simplified_coefficient(1), k(1));
  EXPECT_EQ(simplified_coefficient(2), A);
  EXPECT_EQ(simplified_coefficient(4), D);
  EXPECT_EQ(simplified_coefficient(5), A * D - E);
  EXPECT_EQ(simplified_coefficient(6), B * D);
  EXPECT_EQ(simplified_coefficient(7), B * (A * D - E));
}

TEST(Series, CylinderMatchesTubeVolume) {
  const SceneSurface s = cylinder();
  const std::vector<double> eps{0.1, 0.25, 0.5};
  for (int order : {2, 3, 4, 6, 9}) {
    const SteinerReport r = steiner_series(s, order, eps);
    ASSERT_EQ(r.comparison.size(), eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double exact = M_PI * (1 + eps[i]) * (1 + eps[i]);
      EXPECT_NEAR(r.comparison[i], exact, 1e-14);
      EXPECT_NEAR(r.simplified_values[i], exact, 1e-10) << "order " << order;
      EXPECT_LE(r.comparison_error[i], 1e-10);
    }
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.order, order);
    EXPECT_LE(r.max_eikonal_defect, 1e-12);
  }
}

TEST(Series, CylinderTermIntegrals) {
  const SteinerReport r = steiner_series(cylinder(), 4, {0.1});
  ASSERT_GE(r.simplified.size(), 4u);
  EXPECT_NEAR(r.simplified[0].integral, 2 * M_PI, 1e-12);  // perimeter
  EXPECT_NEAR(r.simplified[1].integral, 2 * M_PI, 1e-12);  // integral of A = 1/R
  for (std::size_t i = 2; i < r.simplified.size(); ++i) EXPECT_NEAR(r.simplified[i].integral, 0.0, 1e-12);
  for (double d : r.differences) EXPECT_NEAR(d, 0.0, 1e-12);
}

TEST(Series, GaussBonnetConsistencyOnCylinder) {
  const SceneSurface s = cylinder();
  const QuadResult q = perimeter_integral_parametric(
      s.charts[0].patch,
      [&](const PatchPoint& pp, double, double) {
        const SteinerCoefficients c = coefficients_at(s.delta, HPoint::from(pp.f));
        return c.B + c.C;
      },
      s.charts[0].domain, {});
  EXPECT_NEAR(q.value, 0.0, 1e-12);
}

TEST(Series, VerticalSlabKeepsOnlyPerimeterTerm) {
  const json j = {{"schema", 1},
                  {"name", "slab"},
                  {"surface", {{"u", "x1"}, {"charts", {{{"f", {"0", "v", "w"}}, {"domain", {{"rect", {-1, 1, 0, 2}}}}}}}}},
                  {"steiner", {{"delta", "x1"}}}};
  const SteinerReport r = steiner_series(parse_scene(j), 5, {0.1, 0.3});
  EXPECT_FALSE(r.has_volume);
  EXPECT_NEAR(r.simplified_values[0], 0.4, 1e-13);
  EXPECT_NEAR(r.simplified_values[1], 1.2, 1e-13);
  EXPECT_NEAR(r.raw_values[1], 1.2, 1e-13);
}

TEST(Series, RejectsBadOrder) {
  EXPECT_THROW(steiner_series(cylinder(), -1, {0.1}), std::invalid_argument);
}

TEST(GIdentity, LinearFunction) {
  const GIdentityReport r = g_identity_check(expr::compile_field("x1"), {0.2, 0.5, -0.7});
  EXPECT_EQ(r.rows.size(), 6u);
  EXPECT_LE(r.max_residual, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(GIdentity, CylinderDistance) {
  const ScalarField d = expr::compile_field("sqrt(x1^2 + x2^2) - 1");
  for (const HPoint& p : {HPoint{1.2, 0.5, 0.3}, HPoint{-0.7, 0.9, -2.0}, HPoint{0.1, -1.5, 1.0}}) {
    const GIdentityReport r = g_identity_check(d, p);
    EXPECT_EQ(r.rows.size(), 6u);
    EXPECT_LE(r.max_residual, 1e-6);
    EXPECT_TRUE(r.pass);
    const double rr = std::hypot(p.x1, p.x2);
    bool seen = false;
    for (const GIdentityRow& row : r.rows)
      if (row.relation.rfind("g(A)", 0) == 0) {
        EXPECT_NEAR(row.algebraic, -1 / (rr * rr), 1e-13);
        seen = true;
      }
    EXPECT_TRUE(seen);
  }
}
