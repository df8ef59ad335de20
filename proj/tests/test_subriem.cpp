#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heisgeom/expr.hpp"
#include "heisgeom/subriem.hpp"

using namespace heis;

namespace {

const char* kKoranyi = "(x1^2 + x2^2)^2 + 16*x3^2 - 1";

HPoint koranyi_point(double phi, double theta) {
  const double r = std::sqrt(std::cos(phi));
  return {r * std::cos(theta), r * std::sin(theta), std::sin(phi) / 4};
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

// P0 = X3u / |grad_H u| evaluated from plain values of u by central differences.
double P0_fd(const ScalarField& u, const HPoint& p) {
  const double h = 1e-5;
  auto along = [&](const Vec3d& v) {
    const HPoint a{p.x1 + h * v[0], p.x2 + h * v[1], p.x3 + h * v[2]};
    const HPoint b{p.x1 - h * v[0], p.x2 - h * v[1], p.x3 - h * v[2]};
    return (u.value(a) - u.value(b)) / (2 * h);
  };
  const double a = along(X1_at(p)), b = along(X2_at(p)), c = along(X3_at(p));
  return c / std::hypot(a, b);
}

// K0 = -P0^2 - (X2u/l) X1(P0) + (X1u/l) X2(P0), derivatives along the frame fields by differences.
double K0_fd(const ScalarField& u, const HPoint& p) {
  const HorizontalJet j = horizontal_jet(u, p);
  const double l = std::hypot(j.Xu[0], j.Xu[1]);
  const double h = 1e-4;
  auto deriv = [&](const Vec3d& v) {
    const HPoint a{p.x1 + h * v[0], p.x2 + h * v[1], p.x3 + h * v[2]};
    const HPoint b{p.x1 - h * v[0], p.x2 - h * v[1], p.x3 - h * v[2]};
    return (P0_fd(u, a) - P0_fd(u, b)) / (2 * h);
  };
  const double P = j.Xu[2] / l;
  return -P * P - j.Xu[1] / l * deriv(X1_at(p)) + j.Xu[0] / l * deriv(X2_at(p));
}

// H0 = X1(pbar) + X2(qbar) by differences along the frame fields.
double H0_fd(const ScalarField& u, const HPoint& p) {
  const double h = 1e-5;
  auto unit = [&](const HPoint& q) {
    const HorizontalJet j = horizontal_jet(u, q);
    const double l = std::hypot(j.Xu[0], j.Xu[1]);
    return std::array<double, 2>{j.Xu[0] / l, j.Xu[1] / l};
  };
  auto shifted = [&](const Vec3d& v, double s) { return HPoint{p.x1 + s * v[0], p.x2 + s * v[1], p.x3 + s * v[2]}; };
  const Vec3d a = X1_at(p), b = X2_at(p);
  return (unit(shifted(a, h))[0] - unit(shifted(a, -h))[0]) / (2 * h) +
         (unit(shifted(b, h))[1] - unit(shifted(b, -h))[1]) / (2 * h);
}

}  // namespace

TEST(CurveCurvature0, ShiftedCircle) {
  const CurveModel c = expr::compile_curve("cos(t)+1, sin(t), 0", 0, 2 * M_PI);
  for (double th = 0.1; th < 6.2; th += 0.1) {
    if (std::fabs(th - M_PI) < 1e-3) continue;
    const CurvatureReport r = curve_curvature_0(c, th);
    EXPECT_EQ(r.cls.kind, PointClass::NonHorizontalPoint);
    EXPECT_NEAR(r.value, 2 / std::fabs(1 + std::cos(th)), 1e-12 * r.value);
  }
  const CurvatureReport r = curve_curvature_0(c, M_PI);
  EXPECT_TRUE(r.cls.horizontal());
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(CurveCurvature0, UnitCircle) {
  const CurveModel c = expr::compile_curve("cos(t), sin(t), 0", 0, 2 * M_PI);
  SubRiemOptions opt;
  opt.sweep = {1e2, 1e4, 1e6};
  for (double t = 0; t < 6.2; t += 0.5) {
    const CurvatureReport r = curve_curvature_0(c, t, opt);
    EXPECT_NEAR(r.value, 2.0, 1e-13);
    EXPECT_TRUE(r.converging);
    ASSERT_EQ(r.witnesses.size(), 3u);
    EXPECT_LT(std::fabs(r.witnesses.back().second - 2.0) / 2.0, 1e-4);
  }
}

TEST(CurveCurvature0, BranchConsistencyOnRandomCurves) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  SubRiemOptions opt;
  opt.sweep = {1e2, 1e4, 1e6};
  int checked = 0;
  for (int k = 0; k < 30; ++k) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.4f*cos(t) + %.4f*t, %.4f*sin(t) + %.4f*t^2, %.4f*t + %.4f*t^3", d(rng), d(rng),
                  d(rng), d(rng), d(rng), d(rng));
    const CurveModel c = expr::compile_curve(buf, -1, 1);
    const double t = d(rng) / 1.5;
    const CurvePoint p = c(t);
    const PointClass pc = classify_curve_point(p, 1e-10);
    if (pc.measure < 0.1 * pc.scale) continue;
    const CurvatureReport r = curve_curvature_0(c, t, opt);
    EXPECT_TRUE(r.converging) << buf;
    EXPECT_GT(r.witness_errors[1] / r.witness_errors[2], 50.0) << buf;
    EXPECT_LT(r.witness_errors.back() / r.value, 1e-3) << buf;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(CurveCurvature0, ZeroVelocityIsAnError) {
  const CurveModel c = expr::compile_curve("t^2, t^3, 0", -1, 1);
  EXPECT_THROW(curve_curvature_0(c, 0.0), GeometryError);
}

TEST(CurveCurvature0, AmbiguousBandIsFlaggedAndStrictThrows) {
  const CurveModel c = expr::compile_curve("t, 0, 5e-10*t", -1, 1);
  const CurvatureReport r = curve_curvature_0(c, 0.3);
  EXPECT_TRUE(r.cls.ambiguous);
  EXPECT_FALSE(r.warnings.empty());
  SubRiemOptions opt;
  opt.strict = true;
  EXPECT_THROW(curve_curvature_0(c, 0.3, opt), ClassificationError);
  const CurveModel clear = expr::compile_curve("t, 0, 5e-8*t", -1, 1);
  EXPECT_FALSE(curve_curvature_0(clear, 0.3, opt).cls.ambiguous);
}

TEST(CurveCurvature0, ClassificationRecordsThreshold) {
  const CurveModel c = expr::compile_curve("cos(t)+1, sin(t), 0", 0, 7);
  const PointClass pc = classify_curve_point(c(1.0), 1e-10);
  EXPECT_EQ(pc.threshold, 1e-10);
  EXPECT_NEAR(pc.measure, (1 + std::cos(1.0)) / 2, 1e-15);
  EXPECT_DOUBLE_EQ(pc.scale, std::fabs(std::sin(1.0)) + std::fabs(std::cos(1.0)));
}

TEST(GeodesicCurvature0, SaddleCircle) {
  const ScalarField u = expr::compile_field("x3 - x1*x2/2");
  const CurveModel c = expr::compile_curve("cos(t), sin(t), sin(2*t)/4", 0, 2 * M_PI);
  for (double t = 0.2; t < 6.2; t += 0.3) {
    if (std::fabs(std::sin(t)) < 0.05) continue;
    const CurvatureReport r = signed_geodesic_curvature_0(u, c, t);
    EXPECT_NEAR(std::fabs(r.value), 1 / std::fabs(std::sin(t)), 1e-12 / std::fabs(std::sin(t)));
  }
}

TEST(GeodesicCurvature0, HorizontalCurvesGiveExactZero) {
  const ScalarField u = expr::compile_field("x3 - x1*x2/2");
  // x1-axis is horizontal and lies on the saddle
  const CurveModel axis = expr::compile_curve("t, 0, 0", -1, 1);
  for (double t = -0.9; t < 1; t += 0.3) {
    const CurvatureReport r = signed_geodesic_curvature_0(u, axis, t);
    EXPECT_TRUE(r.cls.horizontal());
    EXPECT_EQ(r.value, 0.0);
  }
  const ScalarField plane = expr::compile_field("x3");
  const CurveModel ray = expr::compile_curve("t*cos(1.1), t*sin(1.1), 0", 0.2, 2);
  EXPECT_EQ(signed_geodesic_curvature_0(plane, ray, 1.0).value, 0.0);
}

TEST(GeodesicCurvature0, SweepConvergesOnNonHorizontalSamples) {
  const ScalarField u = expr::compile_field("x3 - x1^2/2 + sin(x2)");
  const CurveModel c = expr::compile_curve("t, t^2 - 1, t^2/2 - sin(t^2 - 1)", -1, 1);
  SubRiemOptions opt;
  opt.sweep = {1e2, 1e4, 1e6};
  for (double t = -0.65; t < 1; t += 0.2) {
    const CurvatureReport r = signed_geodesic_curvature_0(u, c, t, opt);
    ASSERT_FALSE(r.cls.horizontal());
    EXPECT_TRUE(r.converging) << t;
    EXPECT_GT(r.witness_errors[1] / r.witness_errors[2], 50.0) << t;
    EXPECT_LT(std::fabs(r.witnesses.back().second - r.value), 1e-3 * std::max(1.0, std::fabs(r.value))) << t;
  }
}

TEST(GaussianCurvature0, KoranyiClosedForm) {
  const ScalarField u = expr::compile_field(kKoranyi);
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> phi(-1.45, 1.45), th(0, 2 * M_PI);
  for (int k = 0; k < 100; ++k) {
    const HPoint p = koranyi_point(phi(rng), th(rng));
    const double s = p.x1 * p.x1 + p.x2 * p.x2;
    EXPECT_NEAR(K0_value(u, p), -2 / s + 6 * s, 1e-10 * std::max(1.0, 2 / s));
  }
}

TEST(GaussianCurvature0, GalleryClosedForms) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  const double alpha = 0.7;
  const ScalarField par = expr::compile_field("x3 - a*(x1^2 + x2^2)", {{"a", alpha}});
  const ScalarField hor = expr::compile_field("x3");
  const ScalarField ruled = expr::compile_field("x1^2 + x2^3 - x1*x2 - 0.4");
  for (int k = 0; k < 50; ++k) {
    const double x1 = d(rng), x2 = d(rng);
    const double s = x1 * x1 + x2 * x2;
    if (s < 1e-2) continue;
    EXPECT_NEAR(K0_value(par, {x1, x2, alpha * s}), -2 / ((1 + 16 * alpha * alpha) * s), 1e-10 * (1 + 2 / s));
    EXPECT_NEAR(K0_value(hor, {x1, x2, 0}), -2 / s, 1e-10 * (1 + 2 / s));
  }
  // vertically ruled: pick points on the curve x1^2 + x2^3 - x1 x2 = 0.4 with arbitrary x3
  for (double x2 = -0.5; x2 < 0.6; x2 += 0.1) {
    const double x1 = (x2 + std::sqrt(x2 * x2 - 4 * (x2 * x2 * x2 - 0.4))) / 2;
    for (double x3 : {-2.0, 0.0, 1.3}) EXPECT_NEAR(K0_value(ruled, {x1, x2, x3}), 0.0, 1e-12);
  }
}

TEST(GaussianCurvature0, AgreesWithDifferenceOracle) {
  const char* fields[] = {kKoranyi, "x3 - x1^2 + x2^3/3 - x1*x2", "x3 - sin(x1)*cos(x2)", "x1 - x2^2/2 - x3^3",
                          "exp(x1/3) + x2^2 + x3^2 - 2"};
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> d(-1, 1);
  for (const char* f : fields) {
    const ScalarField u = expr::compile_field(f);
    for (int k = 0; k < 10; ++k) {
      // off-surface points give the K0 of the level set through them
      const HPoint p{d(rng), d(rng), d(rng)};
      const HorizontalJet j = horizontal_jet(u, p);
      if (std::hypot(j.Xu[0], j.Xu[1]) < 0.2) continue;
      SurfaceTolerances loose;
      const double K = K0_value(u, p, loose);
      EXPECT_NEAR(K, K0_fd(u, p), 1e-5 * std::max(1.0, std::fabs(K))) << f;
      EXPECT_NEAR(K, K0_decomposition(u, p, loose), 1e-10 * std::max(1.0, std::fabs(K))) << f;
    }
  }
}

TEST(GaussianCurvature0, GraphFormula) {
  // u = x3 - f: K0 = -1/(2|grad_H u|^2) - Hess f(grad_H u, J grad_H u)/|grad_H u|^4
  const ScalarField u = expr::compile_field("x3 - (x1^2 - x1*x2^2 + 0.3*x2^3 + sin(x1))");
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> d(-1.2, 1.2);
  for (int k = 0; k < 50; ++k) {
    const double x1 = d(rng), x2 = d(rng);
    const double f = x1 * x1 - x1 * x2 * x2 + 0.3 * x2 * x2 * x2 + std::sin(x1);
    const double f1 = 2 * x1 - x2 * x2 + std::cos(x1), f2 = -2 * x1 * x2 + 0.9 * x2 * x2;
    const double f11 = 2 - std::sin(x1), f12 = -2 * x2, f22 = -2 * x1 + 1.8 * x2;
    const double a = -f1 - x2 / 2, b = -f2 + x1 / 2;  // grad_H u
    const double n2 = a * a + b * b;
    if (n2 < 1e-2) continue;
    const double ja = b, jb = -a;
    const double hess = f11 * a * ja + f12 * (a * jb + b * ja) + f22 * b * jb;
    EXPECT_NEAR(K0_value(u, {x1, x2, f}), -1 / (2 * n2) - hess / (n2 * n2), 1e-9 * (1 + 1 / n2));
  }
}

TEST(GaussianCurvature0, DependentHorizontalDerivativesGiveZero) {
  // x3 = x1 x2 / 2 has X2u = 0 and x3 = -x1 x2 / 2 has X1u = 0
  const ScalarField a = expr::compile_field("x3 - x1*x2/2");
  const ScalarField b = expr::compile_field("x3 + x1*x2/2");
  for (double x1 = -1; x1 <= 1; x1 += 0.4)
    for (double x2 = -1; x2 <= 1; x2 += 0.4) {
      if (std::fabs(x2) > 1e-6) EXPECT_NEAR(K0_value(a, {x1, x2, x1 * x2 / 2}), 0.0, 1e-13);
      if (std::fabs(x1) > 1e-6) EXPECT_NEAR(K0_value(b, {x1, x2, -x1 * x2 / 2}), 0.0, 1e-13);
    }
}

TEST(GaussianCurvature0, CharacteristicPointIsAnError) {
  const ScalarField u = expr::compile_field(kKoranyi);
  EXPECT_THROW(gaussian_curvature_0(u, {0, 0, 0.25}), GeometryError);
  const CurvatureReport r = gaussian_curvature_0(u, koranyi_point(0.3, 0.2));
  EXPECT_EQ(r.cls.kind, PointClass::NonCharacteristic);
}

TEST(GaussianCurvature0, SweepConverges) {
  const ScalarField u = expr::compile_field("x3 - a*(x1^2 + x2^2)", {{"a", 0.5}});
  SubRiemOptions opt;
  opt.sweep = {1e2, 1e4, 1e6};
  const HPoint p{0.3, 0.2, 0.5 * 0.13};
  const CurvatureReport r = gaussian_curvature_0(u, p, opt);
  EXPECT_TRUE(r.converging);
  EXPECT_LT(std::fabs(r.witnesses.back().second - r.value) / std::fabs(r.value), 1e-4);
}

TEST(MeanCurvature0, VerticalPlaneIsZero) {
  const ScalarField u = expr::compile_field("x1");
  EXPECT_EQ(H0_value(u, {0, 0.4, -0.3}), 0.0);
  EXPECT_EQ(mean_curvature_0(u, {0, 2, 5}).value, 0.0);
}

TEST(MeanCurvature0, MatchesDifferencesAndLegendrianCurve) {
  const char* fields[] = {kKoranyi, "x3 - x1^2 + x2^3/3 - x1*x2", "x1^2 + 2*x2^2 - 1"};
  const HPoint pts[] = {koranyi_point(0.4, 0.9), {0.4, -0.3, 0.16 + 0.009 - 0.12}, {0.6, std::sqrt(0.32), 0.7}};
  for (int k = 0; k < 3; ++k) {
    const ScalarField u = expr::compile_field(fields[k]);
    const HPoint p = pts[k];
    const double H = H0_value(u, p);
    EXPECT_NEAR(H, H0_fd(u, p), 1e-6 * std::max(1.0, std::fabs(H))) << fields[k];
    // the flow oracle differences with step h, so its error is O(h^2)
    const double e1 = std::fabs(legendrian_signed_curvature(u, p, 1e-3) - H);
    const double e2 = std::fabs(legendrian_signed_curvature(u, p, 5e-4) - H);
    EXPECT_LT(e1, 2e-5 * std::max(1.0, std::fabs(H))) << fields[k];
    if (e1 > 1e-9) EXPECT_NEAR(e1 / e2, 4.0, 0.5) << fields[k];
  }
  // ellipse cylinder: planar curvature of the ellipse x1^2 + 2 x2^2 = 1
  const ScalarField e = expr::compile_field("x1^2 + 2*x2^2 - 1");
  const double t = 0.8, x1 = std::cos(t), x2 = std::sin(t) / std::sqrt(2.0);
  const double a = 1, b = 1 / std::sqrt(2.0);
  const double kappa = a * b / std::pow(a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t), 1.5);
  EXPECT_NEAR(std::fabs(H0_value(e, {x1, x2, 0.3})), kappa, 1e-12);
}

TEST(MeanCurvature0, SweepConverges) {
  const ScalarField u = expr::compile_field(kKoranyi);
  SubRiemOptions opt;
  opt.sweep = {1e2, 1e4, 1e6};
  const CurvatureReport r = mean_curvature_0(u, koranyi_point(0.5, 2.0), opt);
  EXPECT_TRUE(r.converging);
  EXPECT_LT(std::fabs(r.witnesses.back().second - r.value), 1e-4 * std::max(1.0, std::fabs(r.value)));
}

TEST(DefiningFunction, TrivialScaling) {
  const ScalarField u = expr::compile_field(kKoranyi);
  const ScalarField zero = expr::compile_field("0");
  const DefiningFunctionReport r = defining_function_independence_check(u, zero, koranyi_point(0.2, 0.4));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.K0_difference, 0.0);
}

TEST(DefiningFunction, KoranyiWithSigmaX1) {
  const ScalarField u = expr::compile_field(kKoranyi);
  const ScalarField sigma = expr::compile_field("x1");
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> phi(-1.3, 1.3), th(0, 2 * M_PI);
  for (int k = 0; k < 30; ++k) {
    const DefiningFunctionReport r = defining_function_independence_check(u, sigma, koranyi_point(phi(rng), th(rng)));
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.K0_difference, 1e-8 * std::max(1.0, std::fabs(r.K0_u)));
    EXPECT_LE(r.identity_residual, 1e-8);
    EXPECT_LE(r.nu0_difference, 1e-12);
    EXPECT_LE(r.P0_difference, 1e-10);
  }
}

TEST(DefiningFunction, ScaledFieldIsLiteralProduct) {
  const ScalarField u = expr::compile_field("x3 - x1*x2");
  const ScalarField v = scale_field(u, expr::compile_field("x1 + x2^2"));
  const HPoint p{0.3, -0.7, 0.1};
  EXPECT_NEAR(v.value(p), std::exp(0.3 + 0.49) * u.value(p), 1e-15);
}

TEST(Invariance, CurveTranslationRotationDilation) {
  const CurveModel c = expr::compile_curve("cos(t)+1, sin(t), 0", 0, 2 * M_PI);
  std::vector<double> ts;
  for (double t = 0.1; t < 6.2; t += 0.25) ts.push_back(t);
  const InvarianceReport r = isometry_invariance_curve(c, ts, 50, 27, 2.0);
  EXPECT_EQ(r.transforms, 50);
  EXPECT_LE(r.max_translation_dev, 1e-10);
  EXPECT_LE(r.max_rotation_dev, 1e-10);
  EXPECT_LE(r.max_dilation_dev, 1e-12);
  EXPECT_TRUE(r.skipped.empty());
}

TEST(Invariance, ExplicitTransforms) {
  const CurveModel c = expr::compile_curve("cos(t)+1, sin(t), 0", 0, 2 * M_PI);
  const CurveModel tr = c.left_translated({1, 2, 3});
  const CurveModel ro = c.rotated(M_PI / 3);
  const CurveModel di = c.dilated(2);
  for (double t = 0.2; t < 6; t += 0.4) {
    const double k = curve_curvature_0(c, t).value;
    EXPECT_NEAR(curve_curvature_0(tr, t).value, k, 1e-10 * k);
    EXPECT_NEAR(curve_curvature_0(ro, t).value, k, 1e-10 * k);
    EXPECT_NEAR(curve_curvature_0(di, t).value, k / 2, 1e-12 * k);
  }
}

TEST(Invariance, SurfaceAndPair) {
  const ScalarField u = expr::compile_field("x3 - x1^2 + x2^3/3 - x1*x2");
  std::vector<HPoint> pts;
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int k = 0; k < 10; ++k) {
    const double x1 = d(rng), x2 = d(rng);
    pts.push_back({x1, x2, x1 * x1 - x2 * x2 * x2 / 3 + x1 * x2});
  }
  const InvarianceReport r = isometry_invariance_surface(u, pts, 50, 29);
  EXPECT_LE(r.max_translation_dev, 1e-10);
  EXPECT_LE(r.max_rotation_dev, 1e-10);
  EXPECT_EQ(r.dilation_ratios.size(), pts.size());

  const ScalarField s = expr::compile_field("x3 - x1*x2/2");
  const CurveModel c = expr::compile_curve("cos(t), sin(t), sin(2*t)/4", 0, 2 * M_PI);
  const InvarianceReport q = isometry_invariance_pair(s, c, {0.5, 1.1, 2.3, 4.0, 5.2}, 50, 30);
  EXPECT_LE(q.max_translation_dev, 1e-10);
  EXPECT_LE(q.max_rotation_dev, 1e-10);
}

TEST(Summability, HorizontalPlaneAnnuliAreLinearInWidth) {
  // |K0| = 2/r^2 and the perimeter density on x3 = 0 is r/2, so each annulus gives 2 pi (r_out - r_in)
  const ScalarField u = expr::compile_field("x3");
  const Patch chart = expr::compile_patch("v, w, 0");
  const std::vector<double> radii{0.4, 0.2, 0.1, 0.05, 0.025};
  const SummabilityReport r = summability_diagnostic(u, chart, 0, 0, radii);
  ASSERT_TRUE(r.has_characteristic_point);
  ASSERT_EQ(r.annulus_integrals.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_NEAR(r.annulus_integrals[k], 2 * M_PI * (radii[k] - radii[k + 1]), 1e-8);
  EXPECT_EQ(r.trend, "converging");
}

TEST(Summability, KoranyiPoleConverges) {
  const ScalarField u = expr::compile_field(kKoranyi);
  const Patch cap = expr::compile_patch("v, w, sqrt(1 - (v^2 + w^2)^2)/4");
  const SummabilityReport r = summability_diagnostic(u, cap, 0, 0, {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125});
  ASSERT_TRUE(r.has_characteristic_point);
  EXPECT_EQ(r.trend, "converging");
  for (double q : r.ratios) EXPECT_NEAR(q, 0.5, 0.1);
}

TEST(Summability, CylindricalGraphConverges) {
  const ScalarField u = expr::compile_field("x3 - ((x1^2 + x2^2)/4)^2");
  const Patch chart = expr::compile_patch("v, w, ((v^2 + w^2)/4)^2");
  const SummabilityReport r = summability_diagnostic(u, chart, 0, 0, {0.4, 0.2, 0.1, 0.05, 0.025});
  ASSERT_TRUE(r.has_characteristic_point);
  EXPECT_EQ(r.trend, "converging");
  for (double I : r.annulus_integrals) EXPECT_TRUE(std::isfinite(I));
}

TEST(Summability, VerticalPlaneIsEmpty) {
  const ScalarField u = expr::compile_field("x1");
  const Patch chart = expr::compile_patch("0, v, w");
  const SummabilityReport r = summability_diagnostic(u, chart, 0, 0, {0.4, 0.2, 0.1});
  EXPECT_FALSE(r.has_characteristic_point);
  EXPECT_EQ(r.trend, "empty");
  EXPECT_TRUE(r.annulus_integrals.empty());
}

TEST(Boundary, DensityIsZeroAtHorizontalPoints) {
  const ScalarField u = expr::compile_field("x3 - x1*x2/2");
  const CurveModel axis = expr::compile_curve("t, 0, 0", -1, 1);
  EXPECT_EQ(boundary_density(u, axis(0.3)), 0.0);
  const CurveModel c = expr::compile_curve("cos(t), sin(t), sin(2*t)/4", 0, 2 * M_PI);
  for (double t = 0.3; t < 6; t += 0.5) {
    // density times |omega| dt recovers k0s dgamma
    const CurvePoint p = c(t);
    const double w = std::fabs(contact_form(p.point(), p.dx));
    EXPECT_NEAR(boundary_density(u, p), k0s_value(u, p) * w, 1e-12);
  }
  EXPECT_LT(rel(planar_signed_curvature(c(0.4)), 1.0), 1e-12);
}
