#pragma once

#include <functional>
#include <string>
#include <vector>

#include "heisgeom/field.hpp"
#include "heisgeom/quadrature.hpp"

namespace heis {

struct GalleryCheck {
  std::string name;
  int samples = 1;
  double computed = 0;  // at the worst sample
  double expected = 0;
  double error = 0;     // max over samples (relative to max(1, |expected|) for pointwise checks)
  double tolerance = 0;
  bool pass = false;
};

struct GalleryReport {
  std::string name;
  std::string description;
  std::string reference;  // closed form being reproduced
  std::vector<GalleryCheck> checks;
  std::vector<std::string> notes;
  bool pass = false;
};

struct GalleryEntry {
  std::string name;
  std::string description;
  std::string reference;
  std::function<void(GalleryReport&)> run;
};

const std::vector<GalleryEntry>& gallery_entries();
/// Throws std::out_of_range for an unknown name.
GalleryReport run_entry(const std::string& name);
std::vector<GalleryReport> run_all_entries();

struct FenchelReport {
  double total_curvature = 0;
  double margin = 0;            // total - 2 pi
  double refined_total = 0;     // same integral with a refined rule
  double refinement_change = 0;
  double closure_gap = 0;
  double max_abs_omega = 0;
  std::vector<double> breakpoints;  // sign changes of the planar curvature
  bool strict = false;
};

/// Total curvature of a closed horizontal curve; throws GeometryError when not closed or not horizontal.
FenchelReport fenchel_check(const CurveModel& gamma, const QuadratureSpec& spec = {}, double tau_close = 1e-9,
                            double tau_h = 1e-10);

/// The glued surface whose characteristic set is the segment [-1, 1] x {0} x {0}.
ScalarField piecewise_glued_field();
/// Lift of a planar curve to the glued surface.
CurveModel piecewise_glued_lift(std::function<std::array<Jet2, 2>(const Jet2&)> planar, double t0, double t1);

}  // namespace heis
