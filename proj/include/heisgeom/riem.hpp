#pragma once

#include <array>
#include <vector>

#include "heisgeom/core.hpp"
#include "heisgeom/field.hpp"

namespace heis {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct ApproximationParams {
  double L = 1.0;
  void validate() const;
};

Mat3 metric_matrix(const HPoint& p, double L);
Mat3 metric_inverse(const HPoint& p, double L);
double det3(const Mat3& m);
Mat3 matmul(const Mat3& a, const Mat3& b);

/// Gamma^m_{ij}, indices 0-based, symmetric in (i, j).
struct Christoffel {
  double g[3][3][3]{};
  double operator()(int m, int i, int j) const { return g[m][i][j]; }
};

/// Closed-form tables.
Christoffel christoffel(const HPoint& p, double L);
/// Independent route: Gamma^m_ij = 1/2 g^{mk}(d_i g_kj + d_j g_ik - d_k g_ij) with jet-differentiated metric.
Christoffel christoffel_from_metric(const HPoint& p, double L);

/// Orthonormal frame F = (X1, X2, X3^L): coefficients in F of nabla_{F_i} F_j.
Vec3d frame_connection(int i, int j, double L);

/// nabla_{F_i} F_j rebuilt from Christoffel symbols and converted back to F-coefficients.
Vec3d frame_connection_from_christoffel(int i, int j, const HPoint& p, double L);

/// Koszul right side for frame fields: 1/2(<[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>).
double koszul_frame(int i, int j, int k, double L);

/// Sectional curvature of g_L on span{a, b}, a and b given in F-coefficients.
double sectional_curvature(const Vec3d& a, const Vec3d& b, double L);

/// Converts between X3 coefficients and X3^L coefficients.
inline Vec3d to_frameL(const FrameVector& v, double L) { return {v.c1, v.c2, v.c3L(L)}; }
inline FrameVector from_frameL(const Vec3d& a, double L, const HPoint& base = {}) {
  return FrameVector::fromL(a[0], a[1], a[2], L, base);
}
inline double dotL(const Vec3d& a, const Vec3d& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Inner product of Euclidean vectors under g_L at p.
double metric_dot(const HPoint& p, const Vec3d& a, const Vec3d& b, double L);

/// D_t gamma-dot in the frame {X1, X2, X3} (third coefficient omega(gamma-ddot)).
FrameVector covariant_accel(const CurvePoint& c, double L);
/// D_t gamma-dot in F-coefficients (third coefficient sqrt(L) omega(gamma-ddot)).
Vec3d covariant_accel_frameL(const CurvePoint& c, double L);
/// Euclidean components gamma-ddot^m + Gamma^m_ij gamma-dot^i gamma-dot^j.
Vec3d covariant_accel_euclidean(const CurvePoint& c, double L);

double curve_curvature_L(const CurvePoint& c, double L);
double curve_curvature_L(const CurveModel& gamma, double t, double L);
/// The radicand of the two-square closed form; nonnegative up to rounding.
double curvature_radicand_L(const CurvePoint& c, double L);
/// Closed form evaluated from the radicand (clamped at 0).
double curve_curvature_L_closed_form(const CurvePoint& c, double L);

struct GeodesicOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double h0 = 1e-3;
  double hmin = 1e-14;
  long max_steps = 2000000;
};

struct GeodesicSolution {
  double L = 1;
  std::vector<double> t;
  std::vector<Vec3d> x, v, a;
  long steps = 0, rejected = 0;

  CurvePoint sample(std::size_t i) const { return {x[i], v[i], a[i]}; }
  /// Quintic Hermite interpolant through the samples.
  CurveModel as_curve() const;
};

/// Right side of the g_L geodesic equations: acceleration for position x and velocity v.
Vec3d geodesic_accel(const Vec3d& x, const Vec3d& v, double L);

/// Dormand-Prince 5(4) integration; samples at every accepted step plus the requested times.
GeodesicSolution geodesic_integrate(const HPoint& x0, const Vec3d& v0, double L, double t0,
                                    double t1, const GeodesicOptions& opt = {},
                                    std::vector<double> output_times = {});

struct SurfaceTolerances {
  double tau_char = 1e-8;
  double tau_on = 1e-9;
};

struct SurfaceFrame {
  HPoint base;
  double L = 1;
  double p = 0, q = 0, r = 0;  // X1u, X2u, X3u / sqrt(L)
  double pbar = 0, qbar = 0, rbarL = 0, l = 0, lL = 0;
  FrameVector E1, E2, nuL;

  Vec3d E1L() const { return to_frameL(E1, L); }
  Vec3d E2L() const { return to_frameL(E2, L); }
  Vec3d nuLL() const { return to_frameL(nuL, L); }
};

/// Horizontal gradient norm after normalizing u by its Euclidean gradient norm.
double characteristic_ratio(const Jet<1>& u, const HPoint& p);

SurfaceFrame surface_frame(const ScalarField& u, const HPoint& p, double L,
                           const SurfaceTolerances& tol = {});

struct SecondFundamentalForm {
  double II[2][2]{};
  double L = 1;
  HPoint base;
  double asymmetry = 0;  // |<nabla_E1 nu, E2> - <nabla_E2 nu, E1>| before symmetrization

  double trace() const { return II[0][0] + II[1][1]; }
  double det() const { return II[0][0] * II[1][1] - II[0][1] * II[1][0]; }
};

SecondFundamentalForm second_fundamental_form(const ScalarField& u, const HPoint& p, double L,
                                              const SurfaceTolerances& tol = {});
double mean_curvature_L(const ScalarField& u, const HPoint& p, double L, const SurfaceTolerances& tol = {});
/// Ambient sectional curvature on the tangent plane at p.
double ambient_sectional_L(const ScalarField& u, const HPoint& p, double L, const SurfaceTolerances& tol = {});
double gauss_curvature_L(const ScalarField& u, const HPoint& p, double L, const SurfaceTolerances& tol = {});

/// Throws GeometryError unless |u(x)| <= tau_on |grad u| max(1, |x|).
void require_on_surface(const ScalarField& u, const HPoint& p, double tau_on);

struct GeodesicCurvatureL {
  double signed_value = 0;
  double unsigned_value = 0;  // from the tangential projection, via the radicand form
  double normal_velocity = 0; // <gamma-dot, nu_L>_L, ~0 for curves on the surface
};

GeodesicCurvatureL geodesic_curvature_L(const ScalarField& u, const CurvePoint& c, double L,
                                        const SurfaceTolerances& tol = {});
double signed_geodesic_curvature_L(const ScalarField& u, const CurvePoint& c, double L,
                                   const SurfaceTolerances& tol = {});

}  // namespace heis
