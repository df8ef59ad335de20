#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heisgeom/field.hpp"
#include "heisgeom/quadrature.hpp"
#include "heisgeom/riem.hpp"

namespace heis {

struct SubRiemOptions {
  double tau_h = 1e-10;
  double tau_char = 1e-8;
  double tau_on = 1e-9;
  std::vector<double> sweep{};  // finite-L witnesses; empty for none
  bool strict = false;          // ambiguous classification is an error

  SurfaceTolerances surface() const { return {tau_char, tau_on}; }
};

struct PointClass {
  enum Kind { HorizontalPoint, NonHorizontalPoint, Characteristic, NonCharacteristic };
  Kind kind = NonHorizontalPoint;
  double measure = 0;    // |omega(gamma-dot)| or ||grad_H u||
  double scale = 1;      // |g1|+|g2|+|g3|, or ||grad u||
  double threshold = 0;  // tau used
  bool ambiguous = false;

  bool horizontal() const { return kind == HorizontalPoint; }
  bool characteristic() const { return kind == Characteristic; }
  const char* label() const;
};

PointClass classify_curve_point(const CurvePoint& c, double tau_h);
PointClass classify_surface_point(const ScalarField& u, const HPoint& p, double tau_char);

class ClassificationError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

struct CurvatureReport {
  std::string quantity;
  double parameter = 0;  // curve parameter when applicable
  HPoint point;
  PointClass cls;
  double value = 0;
  std::vector<std::pair<double, double>> witnesses;  // (L, finite-L value)
  std::vector<double> witness_errors;
  bool converging = true;  // witness errors strictly decreasing
  std::vector<std::string> warnings;
};

/// Raw values.
double k0_value(const CurvePoint& c, double tau_h = 1e-10);
double k0s_value(const ScalarField& u, const CurvePoint& c, double tau_h = 1e-10,
                 const SurfaceTolerances& tol = {});
/// p-bar gamma1' + q-bar gamma2' at non-horizontal points, 0 at horizontal points.
double boundary_density(const ScalarField& u, const CurvePoint& c, double tau_h = 1e-10,
                        const SurfaceTolerances& tol = {});
double K0_value(const ScalarField& u, const HPoint& p, const SurfaceTolerances& tol = {});
double H0_value(const ScalarField& u, const HPoint& p, const SurfaceTolerances& tol = {});

/// -P0^2 - <grad_H P0, J nu0> with grad_H P0 expanded from second frame derivatives.
double K0_decomposition(const ScalarField& u, const HPoint& p, const SurfaceTolerances& tol = {});

CurvatureReport curve_curvature_0(const CurveModel& gamma, double t, const SubRiemOptions& opt = {});
CurvatureReport signed_geodesic_curvature_0(const ScalarField& u, const CurveModel& gamma, double t,
                                            const SubRiemOptions& opt = {});
CurvatureReport gaussian_curvature_0(const ScalarField& u, const HPoint& p, const SubRiemOptions& opt = {});
CurvatureReport mean_curvature_0(const ScalarField& u, const HPoint& p, const SubRiemOptions& opt = {});

/// Curvature of the planar projection, signed, at a curve point.
double planar_signed_curvature(const CurvePoint& c);

/// Signed curvature of the Legendrian curve through p tangent to J grad_H u.
double legendrian_signed_curvature(const ScalarField& u, const HPoint& p, double step = 1e-3);

struct DefiningFunctionReport {
  double K0_u = 0, K0_v = 0;
  double K0_difference = 0;
  double identity_residual = 0;  // gradient transformation law
  double nu0_difference = 0;
  double P0_difference = 0;
  bool pass = false;
};

/// Compares u against v = exp(sigma) u at an on-surface point.
DefiningFunctionReport defining_function_independence_check(const ScalarField& u, const ScalarField& sigma,
                                                            const HPoint& p, double tol = 1e-8);

ScalarField translate_field(const ScalarField& u, const HPoint& g);  // x -> u(g^{-1} x)
ScalarField rotate_field(const ScalarField& u, double theta);        // x -> u(R_{-theta} x)
ScalarField dilate_field(const ScalarField& u, double r);            // x -> u(delta_{1/r} x)
ScalarField scale_field(const ScalarField& u, const ScalarField& sigma);  // exp(sigma) u

struct InvarianceReport {
  int samples = 0;
  int transforms = 0;
  double max_translation_dev = 0;
  double max_rotation_dev = 0;
  double max_dilation_dev = 0;      // asserted only for curve curvature
  std::vector<double> dilation_ratios;  // empirical K0 ratios (K0 at delta_r p) / K0(p)
  std::vector<std::string> skipped;     // samples skipped (classification changed near thresholds)
};

InvarianceReport isometry_invariance_curve(const CurveModel& gamma, const std::vector<double>& ts,
                                           int transforms, unsigned seed, double dilation = 2.0);
InvarianceReport isometry_invariance_surface(const ScalarField& u, const std::vector<HPoint>& points,
                                             int transforms, unsigned seed, double dilation = 2.0);
InvarianceReport isometry_invariance_pair(const ScalarField& u, const CurveModel& gamma,
                                          const std::vector<double>& ts, int transforms, unsigned seed);

struct SummabilityReport {
  bool has_characteristic_point = false;
  std::vector<double> radii;              // decreasing
  std::vector<double> annulus_integrals;  // integral of |K0| between consecutive radii
  std::vector<double> cumulative;
  std::vector<double> ratios;
  std::string trend;  // "converging", "diverging", or "empty"
};

/// Annulus integrals of |K0| dH around a chart centre mapped to a characteristic point.
SummabilityReport summability_diagnostic(const ScalarField& u, const Patch& chart, double cv, double cw,
                                         const std::vector<double>& radii, const QuadratureSpec& spec = {},
                                         double tau_char = 1e-8);

}  // namespace heis
