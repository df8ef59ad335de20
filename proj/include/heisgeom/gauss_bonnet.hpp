#pragma once

#include <string>
#include <vector>

#include "heisgeom/quadrature.hpp"
#include "heisgeom/scene.hpp"
#include "heisgeom/subriem.hpp"

namespace heis {

class UndeclaredCharacteristicError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

struct ScanSpec {
  int grid = 48;
  double seed_ratio = 0.05;  // grid nodes below this ratio seed a descent
  double accept = 1e-7;      // refined ratio accepted as characteristic
};

struct CharacteristicCandidate {
  HPoint point;  // member with the smallest ratio
  double ratio = 0;
  std::size_t chart = 0;
  bool curve_like = false;
  double extent = 0;  // diameter of the cluster in chart parameters
  std::vector<HPoint> members;
  bool declared = false;
};

/// Grid minima of ||grad_H u|| / ||grad u|| over a chart, refined by pattern search and clustered.
std::vector<CharacteristicCandidate> characteristic_scan(const ScalarField& u, const Patch& chart,
                                                         const Domain2D& domain, const ScanSpec& spec = {});

struct BoundaryTermResult {
  double value = 0;
  double error = 0;
  long evaluations = 0;
  int samples = 0;
  int ambiguous = 0;
  int horizontal = 0;
};

/// Integral of k0s against |omega(gamma-dot)| dt, times the orientation sign.
BoundaryTermResult boundary_term(const CurveModel& gamma, const ScalarField& u, int orientation,
                                 const QuadratureSpec& spec = {}, const SceneTolerances& tol = {});

/// Boundary term of the circle (cos t, sin t, sin 2t / 4) on x3 = x1 x2 / 2; the convention gives +4.
double orientation_reference_value();

struct EpsTraceEntry {
  double eps = 0;
  double surface = 0;
  double surface_error = 0;
  double inner_boundary = 0;  // boundary terms of the excision circles
  double total = 0;           // surface + outer boundaries + inner boundaries
};

struct GaussBonnetOptions {
  QuadratureSpec spec;
  ScanSpec scan;
  bool run_scan = true;
  int sample_grid = 24;  // pointwise K0 sampling per chart
};

struct GaussBonnetReport {
  std::string scene;
  double surface_integral = 0;
  double surface_error = 0;
  std::vector<double> boundary_integrals;
  std::vector<double> boundary_errors;
  std::vector<double> eps;
  std::vector<EpsTraceEntry> trace;
  double defect = 0;
  double defect_error = 0;
  std::vector<CharacteristicCandidate> characteristic;
  std::string handling;  // "none", "excised", or "declared-curve"
  bool conforming = true;
  bool has_target = true;
  double expected = 0;
  double tolerance = 1e-5;
  bool pass = false;
  double max_abs_K0_sampled = 0;
  double eps_exponent = 0;  // log-log slope of the surface trace; NaN when not applicable
  long skipped_nodes = 0;   // quadrature nodes on a declared characteristic curve
  bool orientation_check = false;
  std::vector<std::string> warnings;
};

GaussBonnetReport gauss_bonnet_defect(const SceneSurface& scene, const GaussBonnetOptions& opt = {});

struct ScaledGaussBonnet {
  double L = 1;
  double surface = 0;   // integral of K_L against dsigma_L / sqrt(L)
  double boundary = 0;  // signed k^{L,s} against ds_L / sqrt(L)
  double total() const { return surface + boundary; }
};

/// Finite-L Gauss-Bonnet sum for a scene without characteristic points or excisions.
ScaledGaussBonnet gauss_bonnet_L(const SceneSurface& scene, double L, const QuadratureSpec& spec = {});

}  // namespace heis
