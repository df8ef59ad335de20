#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heisgeom/expr.hpp"
#include "heisgeom/field.hpp"
#include "heisgeom/quadrature.hpp"

namespace heis {

class SceneError : public std::runtime_error {
 public:
  explicit SceneError(const std::string& what) : std::runtime_error(what) {}
};

struct SceneChart {
  Patch patch;
  Domain2D domain = RectDomain{0, 1, 0, 1};
  std::vector<std::string> text;
};

struct SceneBoundary {
  CurveModel curve;
  int orientation = 1;
  std::vector<std::string> text;
};

struct DeclaredCharacteristic {
  enum Kind { Point, Curve };
  Kind kind = Point;
  HPoint from;  // the point, or the first end of a segment
  HPoint to;
};

struct SceneTolerances {
  double tau_h = 1e-10;
  double tau_char = 1e-8;
  double tau_on = 1e-9;
  double defect = 1e-5;
};

struct SceneSurface {
  std::string name;
  expr::Constants constants;
  std::string u_text;
  ScalarField u;
  std::vector<SceneChart> charts;
  std::vector<SceneBoundary> boundaries;
  std::vector<DeclaredCharacteristic> characteristic;
  std::vector<double> eps;  // exclusion radii for excised charts
  SceneTolerances tolerances;
  std::optional<double> expected_defect;

  // Steiner region data (optional)
  std::string delta_text;
  ScalarField delta;
  std::optional<double> volume;
  std::string comparison;  // tube volume as an expression in the constant eps

  bool has_excision() const;
  /// Boundary curves and chart samples lie on {u = 0}.
  void validate() const;
};

SceneSurface parse_scene(const nlohmann::json& j);
SceneSurface load_scene(const std::string& path);

/// Evaluates a constant expression (number or string such as "2*pi").
double scene_number(const nlohmann::json& j, const expr::Constants& constants);

/// The piece of the chart boundary circle of radius rho, as a curve in theta.
CurveModel chart_circle(const Patch& patch, double cv, double cw, double rho, double theta0, double theta1);

}  // namespace heis
