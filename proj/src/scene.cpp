#include "heisgeom/scene.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "heisgeom/riem.hpp"

namespace heis {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ", ";
    s += parts[i];
  }
  return s;
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw SceneError(std::string(what) + ": expected an array of expressions");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw SceneError(std::string(what) + ": expected expression strings");
    out.push_back(e.get<std::string>());
  }
  if (out.size() != 3) throw SceneError(std::string(what) + ": expected 3 components");
  return out;
}

std::pair<double, double> number_pair(const json& j, const expr::Constants& c, const char* what) {
  if (!j.is_array() || j.size() != 2) throw SceneError(std::string(what) + ": expected two numbers");
  return {scene_number(j[0], c), scene_number(j[1], c)};
}

HPoint point3(const json& j, const expr::Constants& c) {
  if (!j.is_array() || j.size() != 3) throw SceneError("characteristic: expected a point [x1, x2, x3]");
  return {scene_number(j[0], c), scene_number(j[1], c), scene_number(j[2], c)};
}

Domain2D parse_domain(const json& j, const expr::Constants& c) {
  if (j.contains("rect")) {
    const json& r = j["rect"];
    if (!r.is_array() || r.size() != 4) throw SceneError("domain.rect: expected [v0, v1, w0, w1]");
    return RectDomain{scene_number(r[0], c), scene_number(r[1], c), scene_number(r[2], c), scene_number(r[3], c)};
  }
  if (j.contains("annulus")) {
    const json& a = j["annulus"];
    AnnulusDomain d;
    if (a.contains("center")) std::tie(d.cv, d.cw) = number_pair(a["center"], c, "annulus.center");
    if (a.contains("r")) std::tie(d.r0, d.r1) = number_pair(a["r"], c, "annulus.r");
    if (a.contains("theta")) std::tie(d.theta0, d.theta1) = number_pair(a["theta"], c, "annulus.theta");
    d.excise = a.value("excise", false);
    if (!(d.r1 > d.r0) || d.r0 < 0) throw SceneError("annulus: need 0 <= r0 < r1");
    return d;
  }
  throw SceneError("domain: expected \"rect\" or \"annulus\"");
}

}  // namespace

double scene_number(const json& j, const expr::Constants& constants) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return expr::compile_field(j.get<std::string>(), constants).value({0, 0, 0});
    } catch (const std::exception& e) {
      throw SceneError("bad number \"" + j.get<std::string>() + "\": " + e.what());
    }
  }
  throw SceneError("expected a number or a constant expression");
}

bool SceneSurface::has_excision() const {
  for (const auto& ch : charts)
    if (const auto* a = std::get_if<AnnulusDomain>(&ch.domain); a && a->excise) return true;
  return false;
}

SceneSurface parse_scene(const json& j) {
  if (!j.is_object()) throw SceneError("scene: expected a JSON object");
  if (j.contains("schema") && j["schema"] != 1) throw SceneError("scene: unsupported schema version");
  SceneSurface s;
  s.name = j.value("name", std::string("scene"));
  if (j.contains("constants")) {
    for (const auto& [k, v] : j["constants"].items()) s.constants[k] = scene_number(v, s.constants);
  }
  const expr::Constants& c = s.constants;
  try {
    if (j.contains("surface")) {
      const json& surf = j["surface"];
      if (surf.contains("u")) {
        s.u_text = surf["u"].get<std::string>();
        s.u = expr::compile_field(s.u_text, c);
      }
      if (surf.contains("charts")) {
        for (const auto& ch : surf["charts"]) {
          SceneChart sc;
          sc.text = string_list(ch.at("f"), "chart.f");
          sc.patch = expr::compile_patch(join(sc.text), c);
          sc.domain = parse_domain(ch.at("domain"), c);
          s.charts.push_back(std::move(sc));
        }
      }
    }
    if (j.contains("boundaries")) {
      for (const auto& b : j["boundaries"]) {
        SceneBoundary sb;
        sb.text = string_list(b.at("curve"), "boundary.curve");
        const double t0 = scene_number(b.at("t0"), c), t1 = scene_number(b.at("t1"), c);
        sb.curve = expr::compile_curve(join(sb.text), t0, t1, c);
        sb.orientation = b.value("orientation", 1);
        if (sb.orientation != 1 && sb.orientation != -1) throw SceneError("boundary.orientation must be 1 or -1");
        s.boundaries.push_back(std::move(sb));
      }
    }
    if (j.contains("characteristic")) {
      for (const auto& d : j["characteristic"]) {
        DeclaredCharacteristic dc;
        const std::string kind = d.value("kind", std::string("point"));
        if (kind == "point") {
          dc.kind = DeclaredCharacteristic::Point;
          dc.from = dc.to = point3(d.at("at"), c);
        } else if (kind == "curve") {
          dc.kind = DeclaredCharacteristic::Curve;
          dc.from = point3(d.at("from"), c);
          dc.to = point3(d.at("to"), c);
        } else {
          throw SceneError("characteristic.kind must be \"point\" or \"curve\"");
        }
        s.characteristic.push_back(dc);
      }
    }
    if (j.contains("exclusions") && j["exclusions"].contains("eps")) {
      for (const auto& e : j["exclusions"]["eps"]) s.eps.push_back(scene_number(e, c));
    }
    if (j.contains("tolerances")) {
      const json& t = j["tolerances"];
      s.tolerances.tau_h = t.value("tau_h", s.tolerances.tau_h);
      s.tolerances.tau_char = t.value("tau_char", s.tolerances.tau_char);
      s.tolerances.tau_on = t.value("tau_on", s.tolerances.tau_on);
      s.tolerances.defect = t.value("defect", s.tolerances.defect);
    }
    if (j.contains("expected_defect")) s.expected_defect = scene_number(j["expected_defect"], c);
    if (j.contains("steiner")) {
      const json& st = j["steiner"];
      if (st.contains("delta")) {
        s.delta_text = st["delta"].get<std::string>();
        s.delta = expr::compile_field(s.delta_text, c);
      }
      if (st.contains("volume")) s.volume = scene_number(st["volume"], c);
      s.comparison = st.value("comparison", std::string());
    }
    if (j.contains("volume")) s.volume = scene_number(j["volume"], c);
  } catch (const json::exception& e) {
    throw SceneError(std::string("scene: ") + e.what());
  }
  for (std::size_t i = 1; i < s.eps.size(); ++i)
    if (!(s.eps[i] < s.eps[i - 1]) || !(s.eps[i] > 0)) throw SceneError("exclusions.eps must be positive and strictly decreasing");
  return s;
}

SceneSurface load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SceneError("scene " + path + ": " + e.what());
  }
  return parse_scene(j);
}

void SceneSurface::validate() const {
  if (!u.valid()) throw SceneError("scene has no defining function u");
  for (std::size_t b = 0; b < boundaries.size(); ++b) {
    const CurveModel& g = boundaries[b].curve;
    for (int k = 0; k <= 64; ++k) {
      const double t = g.t0() + (g.t1() - g.t0()) * k / 64.0;
      try {
        require_on_surface(u, g(t).point(), tolerances.tau_on);
      } catch (const GeometryError& e) {
        throw SceneError("boundary " + std::to_string(b) + " leaves the surface at t=" + std::to_string(t));
      }
    }
  }
  for (std::size_t i = 0; i < charts.size(); ++i) {
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; b <= 6; ++b) {
        double v, w;
        if (const auto* r = std::get_if<RectDomain>(&charts[i].domain)) {
          v = r->v0 + (r->v1 - r->v0) * a / 6.0;
          w = r->w0 + (r->w1 - r->w0) * b / 6.0;
        } else {
          const auto& an = std::get<AnnulusDomain>(charts[i].domain);
          const double rho = an.r0 + (an.r1 - an.r0) * (0.05 + 0.9 * a / 6.0);
          const double th = an.theta0 + (an.theta1 - an.theta0) * b / 6.0;
          v = an.cv + rho * std::cos(th);
          w = an.cw + rho * std::sin(th);
        }
        try {
          require_on_surface(u, HPoint::from(charts[i].patch(v, w).f), tolerances.tau_on);
        } catch (const GeometryError&) {
          throw SceneError("chart " + std::to_string(i) + " leaves the surface near (" + std::to_string(v) + ", " +
                           std::to_string(w) + ")");
        }
      }
    }
  }
}

CurveModel chart_circle(const Patch& patch, double cv, double cw, double rho, double theta0, double theta1) {
  return CurveModel(
      [=](double th) {
        const double c = std::cos(th), s = std::sin(th);
        const PatchPoint pp = patch(cv + rho * c, cw + rho * s);
        const double v1 = -rho * s, w1 = rho * c, v2 = -rho * c, w2 = -rho * s;
        CurvePoint cp;
        for (int i = 0; i < 3; ++i) {
          cp.x[i] = pp.f[i];
          cp.dx[i] = pp.fv[i] * v1 + pp.fw[i] * w1;
          cp.ddx[i] = pp.fvv[i] * v1 * v1 + 2 * pp.fvw[i] * v1 * w1 + pp.fww[i] * w1 * w1 + pp.fv[i] * v2 +
                      pp.fw[i] * w2;
        }
        return cp;
      },
      theta0, theta1, patch.name() + " circle");
}

}  // namespace heis
