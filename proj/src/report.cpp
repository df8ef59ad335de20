#include "heisgeom/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace heis {

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      os << number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string csv_cell(const Json& j) {
  if (j.is_number_float()) {
    const std::string s = number(j.get<double>());
    return s == "null" ? "" : s;
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (j.is_null()) return "";
  return j.dump();
}

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

Json envelope(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

Json to_json(const HPoint& p) { return Json::array({p.x1, p.x2, p.x3}); }

Json to_json(const PointClass& c) {
  Json j;
  j["class"] = c.label();
  j["measure"] = c.measure;
  j["scale"] = c.scale;
  j["threshold"] = c.threshold;
  j["ambiguous"] = c.ambiguous;
  return j;
}

Json to_json(const CurvatureReport& r) {
  Json j;
  j["quantity"] = r.quantity;
  j["parameter"] = r.parameter;
  j["point"] = to_json(r.point);
  j["classification"] = to_json(r.cls);
  j["value"] = r.value;
  Json w = Json::array();
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    Json e;
    e["L"] = r.witnesses[i].first;
    e["value"] = r.witnesses[i].second;
    e["error"] = i < r.witness_errors.size() ? r.witness_errors[i] : NAN;
    w.push_back(e);
  }
  j["witnesses"] = w;
  j["converging"] = r.converging;
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const GaussBonnetReport& r) {
  Json j;
  j["scene"] = r.scene;
  j["surface_integral"] = r.surface_integral;
  j["surface_error"] = r.surface_error;
  j["boundary_integrals"] = doubles(r.boundary_integrals);
  j["boundary_errors"] = doubles(r.boundary_errors);
  j["defect"] = r.defect;
  j["defect_error"] = r.defect_error;
  Json tr = Json::array();
  for (const auto& e : r.trace) {
    Json t;
    t["eps"] = e.eps;
    t["surface"] = e.surface;
    t["surface_error"] = e.surface_error;
    t["inner_boundary"] = e.inner_boundary;
    t["total"] = e.total;
    tr.push_back(t);
  }
  j["trace"] = tr;
  j["eps_exponent"] = r.eps_exponent;
  Json ch = Json::array();
  for (const auto& c : r.characteristic) {
    Json e;
    e["point"] = to_json(c.point);
    e["chart"] = c.chart;
    e["shape"] = c.curve_like ? "curve" : "isolated";
    e["ratio"] = c.ratio;
    e["extent"] = c.extent;
    e["members"] = c.members.size();
    e["declared"] = c.declared;
    ch.push_back(e);
  }
  j["characteristic"] = ch;
  j["handling"] = r.handling;
  j["conforming"] = r.conforming;
  j["max_abs_K0_sampled"] = r.max_abs_K0_sampled;
  j["skipped_nodes"] = r.skipped_nodes;
  j["orientation_check"] = r.orientation_check;
  if (r.has_target) j["expected"] = r.expected;
  else j["expected"] = nullptr;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const SteinerReport& r) {
  Json j;
  j["region"] = r.region;
  j["order"] = r.order;
  if (r.has_volume) j["volume"] = r.volume;
  else j["volume"] = nullptr;
  auto terms = [](const std::vector<SteinerTerm>& ts) {
    Json a = Json::array();
    for (const auto& t : ts) {
      Json e;
      e["power"] = t.power;
      e["polynomial"] = t.polynomial;
      e["integral"] = t.integral;
      e["error"] = t.error;
      e["inverse_factorial"] = t.inverse_factorial;
      a.push_back(e);
    }
    return a;
  };
  j["raw"] = terms(r.raw);
  j["simplified"] = terms(r.simplified);
  j["eps"] = doubles(r.eps);
  j["raw_values"] = doubles(r.raw_values);
  j["simplified_values"] = doubles(r.simplified_values);
  j["differences"] = doubles(r.differences);
  j["comparison"] = doubles(r.comparison);
  j["comparison_error"] = doubles(r.comparison_error);
  j["max_eikonal_defect"] = r.max_eikonal_defect;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const GIdentityReport& r) {
  Json j;
  j["point"] = to_json(r.point);
  j["h"] = r.h;
  j["eikonal"] = r.eikonal;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["relation"] = row.relation;
    e["finite_difference"] = row.finite_difference;
    e["algebraic"] = row.algebraic;
    e["residual"] = row.residual;
    rows.push_back(e);
  }
  j["rows"] = rows;
  j["max_residual"] = r.max_residual;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const GalleryReport& r) {
  Json j;
  j["name"] = r.name;
  j["description"] = r.description;
  j["reference"] = r.reference;
  Json cs = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["check"] = c.name;
    e["samples"] = c.samples;
    e["computed"] = c.computed;
    e["expected"] = c.expected;
    e["error"] = c.error;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    cs.push_back(e);
  }
  j["checks"] = cs;
  j["notes"] = r.notes;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const FenchelReport& r) {
  Json j;
  j["total_curvature"] = r.total_curvature;
  j["margin"] = r.margin;
  j["refined_total"] = r.refined_total;
  j["refinement_change"] = r.refinement_change;
  j["closure_gap"] = r.closure_gap;
  j["max_abs_omega"] = r.max_abs_omega;
  j["breakpoints"] = doubles(r.breakpoints);
  j["strict"] = r.strict;
  return j;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<Json>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_cell(Json(header[i]));
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace heis
