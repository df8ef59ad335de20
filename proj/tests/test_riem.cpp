#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heisgeom/expr.hpp"
#include "heisgeom/riem.hpp"
#include "heisgeom/subriem.hpp"

using namespace heis;

namespace {

HPoint random_point(std::mt19937_64& rng, double s = 2.0) {
  std::uniform_real_distribution<double> d(-s, s);
  return {d(rng), d(rng), d(rng)};
}

const double kLs[] = {0.5, 1.0, 10.0, 1e3};

// Christoffel symbols from central differences of the metric matrix (exact for quadratic entries).
Christoffel christoffel_fd(const HPoint& p, double L) {
  const double h = 1e-3;
  double dg[3][3][3];  // dg[a][i][j] = d_a g_ij
  for (int a = 0; a < 3; ++a) {
    HPoint q = p, r = p;
    (&q.x1)[a] += h;
    (&r.x1)[a] -= h;
    const Mat3 gq = metric_matrix(q, L), gr = metric_matrix(r, L);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dg[a][i][j] = (gq[i][j] - gr[i][j]) / (2 * h);
  }
  const Mat3 gi = metric_inverse(p, L);
  Christoffel G;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += 0.5 * gi[m][k] * (dg[i][k][j] + dg[j][i][k] - dg[k][i][j]);
        G.g[m][i][j] = s;
      }
  return G;
}

// Sectional curvature from coordinate Riemann tensor built out of differenced Christoffel symbols.
double sectional_fd(const HPoint& p, const Vec3d& X, const Vec3d& Y, double L) {
  const double h = 1e-3;
  Christoffel dG[3];
  for (int a = 0; a < 3; ++a) {
    HPoint q = p, r = p;
    (&q.x1)[a] += h;
    (&r.x1)[a] -= h;
    const Christoffel Gq = christoffel_fd(q, L), Gr = christoffel_fd(r, L);
    for (int m = 0; m < 3; ++m)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) dG[a].g[m][i][j] = (Gq(m, i, j) - Gr(m, i, j)) / (2 * h);
  }
  const Christoffel G = christoffel_fd(p, L);
  const Mat3 g = metric_matrix(p, L);
  double Rlow[3][3][3][3];
  for (int rho = 0; rho < 3; ++rho)
    for (int sig = 0; sig < 3; ++sig)
      for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
          double acc = 0;
          for (int lam = 0; lam < 3; ++lam) {
            double R = dG[mu](lam, nu, sig) - dG[nu](lam, mu, sig);
            for (int k = 0; k < 3; ++k) R += G(lam, mu, k) * G(k, nu, sig) - G(lam, nu, k) * G(k, mu, sig);
            acc += g[rho][lam] * R;
          }
          Rlow[rho][sig][mu][nu] = acc;
        }
  double num = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) num += Rlow[a][b][c][d] * X[a] * Y[b] * X[c] * Y[d];
  const double xx = metric_dot(p, X, X, L), yy = metric_dot(p, Y, Y, L), xy = metric_dot(p, X, Y, L);
  return num / (xx * yy - xy * xy);
}

Vec3d frame_euclid(int i, const HPoint& p, double L) {
  if (i == 0) return X1_at(p);
  if (i == 1) return X2_at(p);
  return {0, 0, 1 / std::sqrt(L)};
}

}  // namespace

TEST(Metric, OriginIsDiagonal) {
  const Mat3 g = metric_matrix({}, 7.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(g[i][j], i != j ? 0.0 : (i == 2 ? 7.0 : 1.0));
}

TEST(Metric, DeterminantAndInverse) {
  std::mt19937_64 rng(1);
  for (double L : kLs)
    for (int k = 0; k < 100; ++k) {
      const HPoint p = random_point(rng);
      EXPECT_NEAR(det3(metric_matrix(p, L)), L, 1e-12 * std::max(1.0, L));
      const Mat3 I = matmul(metric_matrix(p, L), metric_inverse(p, L));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(I[i][j], i == j ? 1.0 : 0.0, 1e-12 * std::max(1.0, L));
    }
}

TEST(Metric, FrameIsOrthonormal) {
  std::mt19937_64 rng(2);
  for (double L : kLs)
    for (int k = 0; k < 20; ++k) {
      const HPoint p = random_point(rng);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          EXPECT_NEAR(metric_dot(p, frame_euclid(i, p, L), frame_euclid(j, p, L), L), i == j ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Metric, RejectsNonpositiveL) {
  EXPECT_THROW(ApproximationParams{0.0}.validate(), std::invalid_argument);
  EXPECT_THROW(ApproximationParams{-1.0}.validate(), std::invalid_argument);
}

TEST(Christoffel, ConstantEntries) {
  std::mt19937_64 rng(3);
  for (double L : kLs)
    for (int k = 0; k < 100; ++k) {
      const HPoint p = random_point(rng);
      const Christoffel G = christoffel(p, L);
      EXPECT_NEAR(G(0, 1, 2), L / 2, 1e-14 * L);
      EXPECT_NEAR(G(0, 2, 1), L / 2, 1e-14 * L);
      EXPECT_NEAR(G(2, 0, 0), -p.x1 * p.x2 * L / 4, 1e-13 * L);
    }
}

TEST(Christoffel, OriginPattern) {
  const double L = 3.0;
  const Christoffel G = christoffel({}, L);
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double e = 0;
        if (m == 0 && ((i == 1 && j == 2) || (i == 2 && j == 1))) e = L / 2;
        if (m == 1 && ((i == 0 && j == 2) || (i == 2 && j == 0))) e = -L / 2;
        EXPECT_EQ(G(m, i, j), e) << m << i << j;
      }
}

TEST(Christoffel, TableMatchesMetricDerivatives) {
  std::mt19937_64 rng(4);
  for (double L : kLs)
    for (int k = 0; k < 100; ++k) {
      const HPoint p = random_point(rng);
      const Christoffel A = christoffel(p, L), B = christoffel_from_metric(p, L), C = christoffel_fd(p, L);
      for (int m = 0; m < 3; ++m)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(A(m, i, j), A(m, j, i));
            EXPECT_NEAR(A(m, i, j), B(m, i, j), 1e-12 * std::max(1.0, L));
            EXPECT_NEAR(A(m, i, j), C(m, i, j), 1e-8 * std::max(1.0, L));
          }
    }
}

TEST(Connection, FrameIdentities) {
  std::mt19937_64 rng(5);
  for (double L : kLs) {
    const double s = std::sqrt(L) / 2;
    const Vec3d a = frame_connection(0, 1, L), b = frame_connection(0, 2, L), c = frame_connection(1, 2, L);
    EXPECT_DOUBLE_EQ(a[2], s);
    EXPECT_DOUBLE_EQ(b[1], -s);
    EXPECT_DOUBLE_EQ(c[0], s);
    for (int k = 0; k < 100; ++k) {
      const HPoint p = random_point(rng);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const Vec3d t = frame_connection(i, j, L);
          const Vec3d r = frame_connection_from_christoffel(i, j, p, L);
          for (int m = 0; m < 3; ++m) EXPECT_NEAR(t[m], r[m], 1e-10 * std::max(1.0, L));
        }
    }
  }
}

TEST(Connection, TorsionFreeAndKoszul) {
  for (double L : kLs)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Vec3d a = frame_connection(i, j, L);
        for (int k = 0; k < 3; ++k) {
          EXPECT_NEAR(a[k], koszul_frame(i, j, k, L), 1e-14 * std::max(1.0, L));
          // metric compatibility: <nabla_i F_j, F_k> = -<F_j, nabla_i F_k>
          EXPECT_NEAR(a[k], -frame_connection(i, k, L)[j], 1e-14 * std::max(1.0, L));
        }
      }
  // [X1, X2] = X3 = sqrt(L) X3^L
  const double L = 9.0;
  EXPECT_DOUBLE_EQ(frame_connection(0, 1, L)[2] - frame_connection(1, 0, L)[2], 3.0);
}

TEST(Sectional, MatchesCoordinateRiemannTensor) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-1, 1);
  for (double L : {1.0, 4.0}) {
    EXPECT_NEAR(sectional_curvature({1, 0, 0}, {0, 1, 0}, L), -0.75 * L, 1e-14 * L);
    EXPECT_NEAR(sectional_curvature({1, 0, 0}, {0, 0, 1}, L), 0.25 * L, 1e-14 * L);
    EXPECT_NEAR(sectional_curvature({0, 1, 0}, {0, 0, 1}, L), 0.25 * L, 1e-14 * L);
    for (int k = 0; k < 5; ++k) {
      const HPoint p = random_point(rng, 1.0);
      const Vec3d a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)};
      Vec3d ea{0, 0, 0}, eb{0, 0, 0};
      for (int i = 0; i < 3; ++i) {
        const Vec3d f = frame_euclid(i, p, L);
        for (int m = 0; m < 3; ++m) {
          ea[m] += a[i] * f[m];
          eb[m] += b[i] * f[m];
        }
      }
      EXPECT_NEAR(sectional_curvature(a, b, L), sectional_fd(p, ea, eb, L), 1e-5 * L);
    }
  }
}

TEST(CovariantDerivative, HorizontalPointOfShiftedCircle) {
  const CurveModel c = expr::compile_curve("cos(t)+1, sin(t), 0", 0, 7);
  for (double L : kLs) {
    const CurvePoint cp = c(M_PI);
    const FrameVector D = covariant_accel(cp, L);
    EXPECT_NEAR(D.c1, cp.ddx[0], 1e-15);
    EXPECT_NEAR(D.c2, cp.ddx[1], 1e-15);
    EXPECT_NEAR(D.c3, 0.0, 1e-15);
  }
}

TEST(CovariantDerivative, ChristoffelFormMatchesFrameForm) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (double L : kLs)
    for (int k = 0; k < 100; ++k) {
      CurvePoint c;
      for (int i = 0; i < 3; ++i) {
        c.x[i] = d(rng);
        c.dx[i] = d(rng);
        c.ddx[i] = d(rng);
      }
      const Vec3d e = covariant_accel_euclidean(c, L);
      const Vec3d f = euclidean_from_frame(covariant_accel(c, L));
      for (int m = 0; m < 3; ++m) EXPECT_NEAR(e[m], f[m], 1e-10 * std::max(1.0, L) * (1 + std::fabs(e[m])));
    }
}

TEST(CurveCurvature, HorizontalPointIsOneForEveryL) {
  const CurveModel c = expr::compile_curve("cos(t)+1, sin(t), 0", 0, 7);
  for (double L : {1.0, 10.0, 100.0, 1e4, 1e6}) EXPECT_NEAR(curve_curvature_L(c, M_PI, L), 1.0, 1e-12);
}

TEST(CurveCurvature, ParametrizationInvariant) {
  const CurveModel a = expr::compile_curve("cos(t), sin(2*t), t^2/3", 0, 2);
  const CurveModel b = expr::compile_curve("cos(2*t), sin(4*t), 4*t^2/3", 0, 1);
  for (double L : kLs)
    for (double t = 0.05; t < 1; t += 0.1)
      EXPECT_NEAR(curve_curvature_L(a, 2 * t, L), curve_curvature_L(b, t, L), 1e-11 * (1 + curve_curvature_L(a, 2 * t, L)));
  const CurveModel r = a.reversed();
  for (double t = 0.1; t < 2; t += 0.2)
    EXPECT_NEAR(curve_curvature_L(a, t, 10.0), curve_curvature_L(r, 2 - t, 10.0), 1e-12);
}

TEST(CurveCurvature, RadicandNonnegativeAndClosedFormAgrees) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (double L : kLs)
    for (int k = 0; k < 200; ++k) {
      CurvePoint c;
      for (int i = 0; i < 3; ++i) {
        c.x[i] = d(rng);
        c.dx[i] = d(rng);
        c.ddx[i] = d(rng);
      }
      const double rad = curvature_radicand_L(c, L);
      EXPECT_GE(rad, -1e-12);
      const double k1 = curve_curvature_L(c, L), k2 = curve_curvature_L_closed_form(c, L);
      EXPECT_NEAR(k1, k2, 1e-7 * (1 + k1));
    }
}

TEST(CurveCurvature, ZeroVelocityIsAnError) {
  CurvePoint c;
  EXPECT_THROW(curve_curvature_L(c, 1.0), GeometryError);
}

TEST(Geodesics, HorizontalStartIsStraightLine) {
  const GeodesicSolution s = geodesic_integrate({0.5, -0.2, 0.1}, {0.6, 0.8, 0.5 * (0.5 * 0.8 + 0.2 * 0.6)}, 10.0, 0, 2);
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double t = s.t[i];
    EXPECT_NEAR(s.x[i][0], 0.5 + 0.6 * t, 1e-9);
    EXPECT_NEAR(s.x[i][1], -0.2 + 0.8 * t, 1e-9);
    EXPECT_NEAR(contact_form(HPoint::from(s.x[i]), s.v[i]), 0.0, 1e-9);
  }
}

TEST(Geodesics, OmegaConstantAndCurvatureVanishes) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-1, 1);
  for (double L : {1.0, 10.0, 100.0})
    for (int k = 0; k < 5; ++k) {
      const HPoint x0 = random_point(rng, 1.0);
      const Vec3d v0{d(rng), d(rng), d(rng)};
      const GeodesicSolution s = geodesic_integrate(x0, v0, L, 0, 1.5);
      const double w0 = contact_form(x0, v0);
      for (std::size_t i = 0; i < s.t.size(); ++i) {
        EXPECT_NEAR(contact_form(HPoint::from(s.x[i]), s.v[i]), w0, 1e-9);
        EXPECT_LE(curve_curvature_L(s.sample(i), L), 1e-6);
        const Vec3d D = covariant_accel_euclidean(s.sample(i), L);
        for (int m = 0; m < 3; ++m) EXPECT_NEAR(D[m], 0.0, 1e-8 * std::max(1.0, L));
      }
      const CurveModel c = s.as_curve();
      for (double t = 0.07; t < 1.5; t += 0.13) EXPECT_LE(curve_curvature_L(c, t, L), 1e-4);
    }
}

TEST(Geodesics, ProjectionRotatesAtRateLOmega) {
  const double L = 4.0;
  const HPoint x0{0, 0, 0};
  const Vec3d v0{1, 0, 0.3};
  const GeodesicSolution s = geodesic_integrate(x0, v0, L, 0, 2, {}, {0.5, 1.0, 2.0});
  const double w = 0.3, k = L * w;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double t = s.t[i];
    EXPECT_NEAR(s.v[i][0], std::cos(k * t), 1e-8);
    EXPECT_NEAR(s.v[i][1], std::sin(k * t), 1e-8);
  }
}

TEST(SurfaceFrame, VerticalPlane) {
  const ScalarField u = expr::compile_field("x1");
  for (double L : kLs) {
    const SurfaceFrame f = surface_frame(u, {0, 0.7, -1.1}, L);
    EXPECT_EQ(f.pbar, 1.0);
    EXPECT_EQ(f.qbar, 0.0);
    EXPECT_EQ(f.rbarL, 0.0);
    EXPECT_EQ(f.E1.c1, 0.0);
    EXPECT_EQ(f.E1.c2, -1.0);
    EXPECT_EQ(f.E1.c3, 0.0);
  }
}

TEST(SurfaceFrame, OrthonormalOnKoranyiSphere) {
  const ScalarField u = expr::compile_field("(x1^2 + x2^2)^2 + 16*x3^2 - 1");
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> phi(-1.4, 1.4), th(0, 2 * M_PI);
  std::vector<HPoint> pts{{1, 0, 0}};
  for (int k = 0; k < 50; ++k) {
    const double a = phi(rng), b = th(rng), r = std::sqrt(std::cos(a));
    pts.push_back({r * std::cos(b), r * std::sin(b), std::sin(a) / 4});
  }
  for (double L : kLs)
    for (const HPoint& p : pts) {
      const SurfaceFrame f = surface_frame(u, p, L);
      EXPECT_NEAR(f.pbar * f.pbar + f.qbar * f.qbar, 1.0, 1e-12);
      const Vec3d E1 = f.E1L(), E2 = f.E2L(), n = f.nuLL();
      EXPECT_NEAR(dotL(E1, E1), 1.0, 1e-10);
      EXPECT_NEAR(dotL(E2, E2), 1.0, 1e-10);
      EXPECT_NEAR(dotL(E1, E2), 0.0, 1e-10);
      EXPECT_NEAR(dotL(n, E1), 0.0, 1e-10);
      EXPECT_NEAR(dotL(n, E2), 0.0, 1e-10);
      EXPECT_LE(f.l / f.lL, 1.0);
      EXPECT_NEAR(metric_dot(p, euclidean_from_frame(f.E1), euclidean_from_frame(f.E1), L), 1.0, 1e-10);
    }
}

TEST(SurfaceFrame, CharacteristicPointIsAnError) {
  const ScalarField u = expr::compile_field("x3");
  EXPECT_THROW(surface_frame(u, {0, 0, 0}, 1.0), GeometryError);
}

TEST(SurfaceFrame, LimitsUnderLSweep) {
  const ScalarField u = expr::compile_field("x3 - x1^2 + x2^3/3 - x1*x2");
  const HPoint p{0.4, -0.3, 0.4 * 0.4 + 0.009 - 0.12};
  const HorizontalJet h = horizontal_jet(u, p);
  const double l = std::hypot(h.Xu[0], h.Xu[1]);
  const double lim_a = h.Xu[2] / (l * l), lim_b = h.Xu[2] * h.Xu[2] / (l * l);
  double prev[4] = {1e300, 1e300, 1e300, 1e300};
  for (double L : {1e2, 1e4, 1e6}) {
    const SurfaceFrame f = surface_frame(u, p, L);
    const double err[4] = {std::fabs(f.lL - l), std::fabs(f.rbarL), std::fabs(std::sqrt(L) * f.rbarL / f.lL - lim_a),
                           std::fabs(L * f.rbarL * f.rbarL - lim_b)};
    for (int i = 0; i < 4; ++i) {
      // first-order quantities shrink like 1/sqrt(L) (rbarL) or 1/L (the rest)
      const double rate = i == 1 ? 10.0 : 100.0;
      if (L > 1e2) EXPECT_GT(prev[i] / err[i], 0.9 * rate) << i << " at L=" << L;
      prev[i] = err[i];
    }
  }
  EXPECT_LT(prev[0] / l, 1e-4);
  EXPECT_LT(prev[2] / std::fabs(lim_a), 1e-4);
  EXPECT_LT(prev[3] / lim_b, 1e-4);
}

TEST(SecondFundamentalForm, VerticalPlane) {
  const ScalarField u = expr::compile_field("x1");
  for (double L : kLs) {
    const SecondFundamentalForm s = second_fundamental_form(u, {0, 0.3, 0.2}, L);
    EXPECT_NEAR(s.II[0][0], 0.0, 1e-14);
    EXPECT_NEAR(std::fabs(s.II[0][1]), std::sqrt(L) / 2, 1e-12 * std::sqrt(L));
    EXPECT_EQ(s.II[0][1], s.II[1][0]);
    EXPECT_NEAR(mean_curvature_L(u, {0, 0.3, 0.2}, L), 0.0, 1e-14);
    EXPECT_NEAR(gauss_curvature_L(u, {0, 0.3, 0.2}, L), 0.0, 1e-12 * L);
  }
}

TEST(SecondFundamentalForm, SectionalTermIsQuarterLMinusLrSquared) {
  const ScalarField u = expr::compile_field("x3 - x1^2 + x2^3/3 - x1*x2");
  const HPoint p{0.4, -0.3, 0.4 * 0.4 + 0.009 - 0.12};
  for (double L : kLs) {
    const SurfaceFrame f = surface_frame(u, p, L);
    EXPECT_NEAR(ambient_sectional_L(u, p, L), L / 4 - L * f.rbarL * f.rbarL, 1e-12 * L);
  }
}

TEST(SecondFundamentalForm, KoranyiGaussCurvatureConverges) {
  const ScalarField u = expr::compile_field("(x1^2 + x2^2)^2 + 16*x3^2 - 1");
  const double a = 0.6, b = 1.1, r = std::sqrt(std::cos(a));
  const HPoint p{r * std::cos(b), r * std::sin(b), std::sin(a) / 4};
  const double s = p.x1 * p.x1 + p.x2 * p.x2;
  const double K0 = -2 / s + 6 * s;
  double prev = 1e300;
  std::vector<double> vals;
  for (double L : {1e2, 1e4, 1e6}) {
    const double K = gauss_curvature_L(u, p, L);
    vals.push_back(K);
    EXPECT_LT(std::fabs(K - K0), prev);
    prev = std::fabs(K - K0);
  }
  EXPECT_LT(prev, 1e-3 * std::fabs(K0));
  // K_L = K0 + c/L: Richardson on the last two values
  const double rich = (100 * vals[2] - vals[1]) / 99;
  EXPECT_LT(std::fabs(rich - K0), 1e-8 * std::fabs(K0));
}

TEST(GeodesicCurvature, SignedMagnitudeMatchesTangentialProjection) {
  const ScalarField u = expr::compile_field("x3 - x1^2/2 + sin(x2)");
  const CurveModel c = expr::compile_curve("t, t^2 - 1, t^2/2 - sin(t^2 - 1)", -1, 1);
  for (double L : kLs)
    for (double t = -0.9; t < 1; t += 0.1) {
      const GeodesicCurvatureL g = geodesic_curvature_L(u, c(t), L);
      EXPECT_NEAR(std::fabs(g.signed_value), g.unsigned_value, 1e-9 * (1 + g.unsigned_value));
      EXPECT_NEAR(g.normal_velocity, 0.0, 1e-12 * std::max(1.0, std::sqrt(L)));
    }
}

TEST(GeodesicCurvature, HorizontalCurveTendsToZero) {
  // radial line on x3 = 0: exactly zero at every L
  const ScalarField plane = expr::compile_field("x3");
  const CurveModel ray = expr::compile_curve("t*cos(0.3), t*sin(0.3), 0", 0.5, 2);
  for (double L : {1.0, 1e2, 1e4, 1e6}) EXPECT_LT(std::fabs(signed_geodesic_curvature_L(plane, ray(1.0), L)), 1e-12);
  // horizontal helix on its vertical cylinder is also geodesic for every L
  const ScalarField cyl = expr::compile_field("x1^2 + x2^2 - 1");
  const CurveModel helix = expr::compile_curve("cos(t), sin(t), t/2", 0, 6);
  for (double L : {1.0, 1e2, 1e4, 1e6}) EXPECT_LT(std::fabs(signed_geodesic_curvature_L(cyl, helix(1.3), L)), 1e-9);
}

TEST(GeodesicCurvature, SaddleCircleTendsToCosecant) {
  const ScalarField u = expr::compile_field("x3 - x1*x2/2");
  const CurveModel c = expr::compile_curve("cos(t), sin(t), sin(2*t)/4", 0, 2 * M_PI);
  for (double t : {0.4, 1.2, 2.0, 2.9, 3.5, 4.4, 5.5}) {
    const double target = 1 / std::fabs(std::sin(t));
    double prev = 1e300;
    for (double L : {1e4, 1e6, 1e8}) {
      const double e = std::fabs(std::fabs(signed_geodesic_curvature_L(u, c(t), L)) - target);
      EXPECT_LT(e, prev);
      if (L > 1e4) EXPECT_GT(prev / e, 50.0) << t;
      prev = e;
    }
    EXPECT_LT(prev, 1e-5 * target);
  }
}

TEST(GeodesicCurvature, OffSurfaceIsAnError) {
  const ScalarField u = expr::compile_field("x3");
  const CurveModel c = expr::compile_curve("t, 0, 1", 0, 1);
  EXPECT_THROW(geodesic_curvature_L(u, c(0.5), 1.0), GeometryError);
}
