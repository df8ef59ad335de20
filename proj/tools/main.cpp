#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heisgeom/expr.hpp"
#include "heisgeom/gallery.hpp"
#include "heisgeom/gauss_bonnet.hpp"
#include "heisgeom/parallel.hpp"
#include "heisgeom/report.hpp"
#include "heisgeom/riem.hpp"
#include "heisgeom/scene.hpp"
#include "heisgeom/steiner.hpp"
#include "heisgeom/subriem.hpp"

using namespace heis;

namespace {

enum Exit { Ok = 0, InputError = 1, CheckFailure = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string format = "json";
  std::optional<double> tol;
  std::optional<double> tau_h;
  std::optional<double> tau_char;
  std::vector<double> eps;
  std::vector<double> L;
  std::string command;
};

struct Output {
  Json json;
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
  bool pass = true;
};

int emit(const Global& g, const Output& out) {
  if (g.format == "csv") std::cout << to_csv(out.header, out.rows);
  else std::cout << dump_json(out.json);
  return out.pass ? Ok : CheckFailure;
}

int emit_error(const Global& g, int code, const std::string& kind, const std::string& message,
               Json extra = Json::object()) {
  Json j = envelope(g.command.empty() ? "heisgeom" : g.command);
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  for (auto it = extra.begin(); it != extra.end(); ++it) e[it.key()] = it.value();
  j["error"] = e;
  j["exit_code"] = code;
  std::cout << dump_json(j);
  std::cerr << "heisgeom: " << kind << ": " << message << "\n";
  return code;
}

void require_positive(const std::vector<double>& v, const char* flag) {
  for (double x : v)
    if (!(x > 0) || !std::isfinite(x)) throw UsageError(std::string(flag) + " values must be positive");
}

HPoint parse_point(const std::string& text, const expr::Constants& c) {
  const auto nodes = expr::parse_list(text, expr::Arity::Field, c);
  if (nodes.size() != 3) throw UsageError("--point expects three comma-separated coordinates: " + text);
  double x[3];
  for (int i = 0; i < 3; ++i) x[i] = expr::compile_field(nodes[i]).value({0, 0, 0});
  return {x[0], x[1], x[2]};
}

std::vector<double> grid_parameters(double t0, double t1, int grid, const std::vector<double>& ts) {
  if (!ts.empty()) return ts;
  if (grid < 2) throw UsageError("give --t values or --grid N with N >= 2");
  if (!(t1 > t0)) throw UsageError("--t1 must exceed --t0");
  std::vector<double> out(grid);
  for (int i = 0; i < grid; ++i) out[i] = t0 + (t1 - t0) * i / (grid - 1);
  return out;
}

SubRiemOptions subriem_options(const Global& g, bool strict) {
  SubRiemOptions opt;
  if (g.tau_h) opt.tau_h = *g.tau_h;
  if (g.tau_char) opt.tau_char = *g.tau_char;
  opt.sweep = g.L;
  opt.strict = strict;
  return opt;
}

// curve -----------------------------------------------------------------------------------------

struct CurveArgs {
  std::string expr, constants, u;
  double t0 = 0, t1 = 1;
  int grid = 0;
  std::vector<double> ts;
  bool strict = false;
};

Output run_curve(const Global& g, const CurveArgs& a) {
  require_positive(g.L, "--L");
  const auto params = grid_parameters(a.t0, a.t1, a.grid, a.ts);
  const auto c = expr::parse_constants(a.constants);
  const CurveModel gamma = expr::compile_curve(a.expr, a.t0, a.t1, c);
  std::optional<ScalarField> u;
  if (!a.u.empty()) u = expr::compile_field(a.u, c);
  const SubRiemOptions opt = subriem_options(g, a.strict);

  std::vector<CurvatureReport> reps(params.size());
  parallel_for(params.size(), [&](std::size_t i) {
    reps[i] = u ? signed_geodesic_curvature_0(*u, gamma, params[i], opt)
                : curve_curvature_0(gamma, params[i], opt);
  });

  Output out;
  out.json = envelope("curve");
  out.json["expression"] = a.expr;
  if (u) out.json["surface"] = a.u;
  out.json["quantity"] = u ? "k0s" : "k0";
  Json samples = Json::array();
  for (const auto& r : reps) samples.push_back(to_json(r));
  out.json["samples"] = samples;

  out.header = {"t", "x1", "x2", "x3", "class", "ambiguous", "value"};
  for (double L : g.L) out.header.push_back("L=" + [&] {
    char b[32];
    std::snprintf(b, sizeof b, "%g", L);
    return std::string(b);
  }());
  for (const auto& r : reps) {
    std::vector<Json> row{r.parameter, r.point.x1, r.point.x2, r.point.x3, r.cls.label(), r.cls.ambiguous,
                          r.value};
    for (const auto& w : r.witnesses) row.push_back(w.second);
    out.rows.push_back(row);
  }
  return out;
}

// surface ---------------------------------------------------------------------------------------

struct SurfaceArgs {
  std::string u, constants;
  std::vector<std::string> points;
};

Output run_surface(const Global& g, const SurfaceArgs& a) {
  require_positive(g.L, "--L");
  if (a.points.empty()) throw UsageError("surface needs at least one --point");
  const auto c = expr::parse_constants(a.constants);
  const ScalarField u = expr::compile_field(a.u, c);
  const SubRiemOptions opt = subriem_options(g, false);
  std::vector<HPoint> pts;
  for (const auto& s : a.points) pts.push_back(parse_point(s, c));
  for (const auto& p : pts) require_on_surface(u, p, opt.tau_on);

  struct Row {
    PointClass cls;
    std::optional<CurvatureReport> K, H;
    std::string error;
  };
  std::vector<Row> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    rows[i].cls = classify_surface_point(u, pts[i], opt.tau_char);
    if (rows[i].cls.characteristic()) {
      rows[i].error = "characteristic point: K0 and H0 are undefined";
      return;
    }
    rows[i].K = gaussian_curvature_0(u, pts[i], opt);
    rows[i].H = mean_curvature_0(u, pts[i], opt);
  });

  Output out;
  out.json = envelope("surface");
  out.json["surface"] = a.u;
  Json arr = Json::array();
  out.header = {"x1", "x2", "x3", "class", "K0", "H0"};
  for (double L : g.L) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", L);
    out.header.push_back(std::string("K_L=") + b);
    out.header.push_back(std::string("H_L=") + b);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Row& r = rows[i];
    Json e;
    e["point"] = to_json(pts[i]);
    e["classification"] = to_json(r.cls);
    std::vector<Json> row{pts[i].x1, pts[i].x2, pts[i].x3, r.cls.label()};
    if (r.K) {
      e["K0"] = to_json(*r.K);
      e["H0"] = to_json(*r.H);
      row.push_back(r.K->value);
      row.push_back(r.H->value);
      for (std::size_t k = 0; k < g.L.size(); ++k) {
        row.push_back(r.K->witnesses[k].second);
        row.push_back(r.H->witnesses[k].second);
      }
    } else {
      e["K0"] = nullptr;
      e["H0"] = nullptr;
      e["error"] = r.error;
      out.pass = false;
      row.resize(out.header.size(), nullptr);
    }
    arr.push_back(e);
    out.rows.push_back(row);
  }
  out.json["points"] = arr;
  out.json["pass"] = out.pass;
  return out;
}

// gauss-bonnet ----------------------------------------------------------------------------------

struct GaussBonnetArgs {
  std::string scene;
  bool no_scan = false;
};

Output run_gauss_bonnet(const Global& g, const GaussBonnetArgs& a) {
  require_positive(g.eps, "--eps");
  require_positive(g.L, "--L");
  SceneSurface scene = load_scene(a.scene);
  if (!g.eps.empty()) scene.eps = g.eps;
  if (g.tol) scene.tolerances.defect = *g.tol;
  if (g.tau_h) scene.tolerances.tau_h = *g.tau_h;
  if (g.tau_char) scene.tolerances.tau_char = *g.tau_char;
  if (!g.L.empty() && (scene.has_excision() || !scene.characteristic.empty()))
    throw UsageError("--L needs a scene without characteristic points or excisions");

  GaussBonnetOptions opt;
  opt.run_scan = !a.no_scan;
  const GaussBonnetReport rep = gauss_bonnet_defect(scene, opt);

  Output out;
  out.json = envelope("gauss-bonnet");
  Json body = to_json(rep);
  for (auto it = body.begin(); it != body.end(); ++it) out.json[it.key()] = it.value();
  out.pass = rep.pass;

  std::vector<ScaledGaussBonnet> finite(g.L.size());
  parallel_for(g.L.size(), [&](std::size_t i) { finite[i] = gauss_bonnet_L(scene, g.L[i], opt.spec); });
  if (!g.L.empty()) {
    Json arr = Json::array();
    for (const auto& f : finite) {
      Json e;
      e["L"] = f.L;
      e["surface"] = f.surface;
      e["boundary"] = f.boundary;
      e["total"] = f.total();
      e["total_times_sqrt_L"] = f.total() * std::sqrt(f.L);
      arr.push_back(e);
    }
    out.json["finite_L"] = arr;
  }

  double outer = 0;
  for (double b : rep.boundary_integrals) outer += b;
  out.header = {"row", "eps", "surface", "inner_boundary", "outer_boundary", "total"};
  for (const auto& t : rep.trace)
    out.rows.push_back({"eps", t.eps, t.surface, t.inner_boundary, outer, t.total});
  out.rows.push_back({"limit", nullptr, rep.surface_integral, nullptr, outer, rep.defect});
  for (const auto& f : finite) {
    char b[32];
    std::snprintf(b, sizeof b, "L=%g", f.L);
    out.rows.push_back({b, nullptr, f.surface, nullptr, f.boundary, f.total()});
  }
  return out;
}

// steiner ---------------------------------------------------------------------------------------

struct SteinerArgs {
  std::string region, delta;
  int order = 4;
  std::vector<std::string> g_points;
};

Output run_steiner(const Global& g, const SteinerArgs& a) {
  if (a.order < 0 || a.order > 12) throw UsageError("--order must lie in [0, 12]");
  require_positive(g.eps, "--eps");
  SceneSurface region = load_scene(a.region);
  if (!a.delta.empty()) {
    region.delta_text = a.delta;
    region.delta = expr::compile_field(a.delta, region.constants);
  }
  if (!region.delta.valid()) throw UsageError("no --delta given and the region scene has none");
  std::vector<HPoint> gp;
  for (const auto& s : a.g_points) gp.push_back(parse_point(s, region.constants));
  const std::vector<double> eps = g.eps.empty() ? std::vector<double>{0.1, 0.25, 0.5} : g.eps;

  SteinerOptions opt;
  if (g.tol) opt.tolerance = *g.tol;
  if (g.tau_char) opt.tau_char = *g.tau_char;
  const SteinerReport rep = steiner_series(region, a.order, eps, opt);

  std::vector<GIdentityReport> gid(gp.size());
  parallel_for(gp.size(), [&](std::size_t i) { gid[i] = g_identity_check(region.delta, gp[i]); });

  Output out;
  out.json = envelope("steiner");
  out.json["delta"] = region.delta_text;
  Json body = to_json(rep);
  for (auto it = body.begin(); it != body.end(); ++it) out.json[it.key()] = it.value();
  out.pass = rep.pass;
  if (!gid.empty()) {
    Json arr = Json::array();
    for (const auto& r : gid) {
      arr.push_back(to_json(r));
      out.pass = out.pass && r.pass;
    }
    out.json["g_identity"] = arr;
    out.json["pass"] = out.pass;
  }

  out.header = {"eps", "raw", "simplified", "difference", "comparison", "comparison_error"};
  for (std::size_t i = 0; i < rep.eps.size(); ++i) {
    std::vector<Json> row{rep.eps[i], rep.raw_values[i], rep.simplified_values[i], rep.differences[i]};
    if (i < rep.comparison.size()) {
      row.push_back(rep.comparison[i]);
      row.push_back(rep.comparison_error[i]);
    } else {
      row.push_back(nullptr);
      row.push_back(nullptr);
    }
    out.rows.push_back(row);
  }
  return out;
}

// sweep-L ---------------------------------------------------------------------------------------

struct SweepArgs {
  std::string curve, u, constants, quantity = "K";
  std::vector<double> ts;
  std::vector<std::string> points;
};

Output run_sweep(const Global& g, const SweepArgs& a) {
  std::vector<double> Ls = g.L.empty() ? std::vector<double>{1e2, 1e4, 1e6} : g.L;
  require_positive(Ls, "--L");
  for (std::size_t i = 1; i < Ls.size(); ++i)
    if (!(Ls[i] > Ls[i - 1])) throw UsageError("--L values must increase");
  const double tol = g.tol.value_or(1e-3);
  const auto c = expr::parse_constants(a.constants);
  const bool curve_mode = !a.curve.empty();
  if (curve_mode && a.ts.empty()) throw UsageError("sweep-L --expr-curve needs --t");
  if (!curve_mode && (a.u.empty() || a.points.empty()))
    throw UsageError("sweep-L needs --expr-curve with --t, or --u with --point");
  if (a.quantity != "K" && a.quantity != "H") throw UsageError("--quantity must be K or H");

  Global gs = g;
  gs.L = Ls;
  const SubRiemOptions opt = subriem_options(gs, false);
  std::optional<ScalarField> u;
  if (!a.u.empty()) u = expr::compile_field(a.u, c);

  std::vector<CurvatureReport> reps;
  if (curve_mode) {
    const double t0 = *std::min_element(a.ts.begin(), a.ts.end());
    const double t1 = *std::max_element(a.ts.begin(), a.ts.end());
    const CurveModel gamma = expr::compile_curve(a.curve, t0, t1, c);
    reps.resize(a.ts.size());
    parallel_for(a.ts.size(), [&](std::size_t i) {
      reps[i] = u ? signed_geodesic_curvature_0(*u, gamma, a.ts[i], opt) : curve_curvature_0(gamma, a.ts[i], opt);
    });
  } else {
    std::vector<HPoint> pts;
    for (const auto& s : a.points) pts.push_back(parse_point(s, c));
    for (const auto& p : pts) {
      require_on_surface(*u, p, opt.tau_on);
      if (classify_surface_point(*u, p, opt.tau_char).characteristic())
        throw GeometryError("characteristic point: the sweep has no limit value");
    }
    reps.resize(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
      reps[i] = a.quantity == "K" ? gaussian_curvature_0(*u, pts[i], opt) : mean_curvature_0(*u, pts[i], opt);
    });
  }

  Output out;
  out.json = envelope("sweep-L");
  out.json["L"] = Ls;
  out.json["tolerance"] = tol;
  Json arr = Json::array();
  out.header = {"sample", "quantity", "L", "value", "limit", "error", "relative_error"};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    const double last = r.witness_errors.empty() ? 0.0 : r.witness_errors.back();
    const double rel = r.value != 0.0 ? last / std::fabs(r.value) : last;
    const bool pass = r.converging && rel <= tol;
    Json e = to_json(r);
    e["terminal_relative_error"] = rel;
    e["pass"] = pass;
    arr.push_back(e);
    out.pass = out.pass && pass;
    for (std::size_t k = 0; k < r.witnesses.size(); ++k) {
      const double err = r.witness_errors[k];
      out.rows.push_back({static_cast<int>(i), r.quantity, r.witnesses[k].first, r.witnesses[k].second, r.value, err,
                          r.value != 0.0 ? err / std::fabs(r.value) : err});
    }
  }
  out.json["samples"] = arr;
  out.json["pass"] = out.pass;
  return out;
}

// gallery ---------------------------------------------------------------------------------------

Output run_gallery_list() {
  Output out;
  out.json = envelope("gallery list");
  Json arr = Json::array();
  out.header = {"name", "description", "reference"};
  for (const auto& e : gallery_entries()) {
    Json j;
    j["name"] = e.name;
    j["description"] = e.description;
    j["reference"] = e.reference;
    arr.push_back(j);
    out.rows.push_back({e.name, e.description, e.reference});
  }
  out.json["entries"] = arr;
  return out;
}

Output run_gallery(const std::string& name) {
  std::vector<GalleryReport> reps;
  if (name == "all") reps = run_all_entries();
  else reps.push_back(run_entry(name));
  Output out;
  out.json = envelope("gallery run");
  Json arr = Json::array();
  out.header = {"entry", "check", "samples", "computed", "expected", "error", "tolerance", "pass"};
  for (const auto& r : reps) {
    arr.push_back(to_json(r));
    out.pass = out.pass && r.pass;
    for (const auto& c : r.checks)
      out.rows.push_back({r.name, c.name, c.samples, c.computed, c.expected, c.error, c.tolerance, c.pass});
  }
  out.json["entries"] = arr;
  out.json["pass"] = out.pass;
  return out;
}

// fenchel ---------------------------------------------------------------------------------------

struct FenchelArgs {
  std::string expr, constants;
  double t0 = 0, t1 = 6.283185307179586;
};

Output run_fenchel(const Global& g, const FenchelArgs& a) {
  if (!(a.t1 > a.t0)) throw UsageError("--t1 must exceed --t0");
  const auto c = expr::parse_constants(a.constants);
  const CurveModel gamma = expr::compile_curve(a.expr, a.t0, a.t1, c);
  const FenchelReport rep = fenchel_check(gamma, {}, 1e-9, g.tau_h.value_or(1e-10));
  Output out;
  out.json = envelope("fenchel");
  out.json["expression"] = a.expr;
  Json body = to_json(rep);
  for (auto it = body.begin(); it != body.end(); ++it) out.json[it.key()] = it.value();
  out.pass = rep.strict;
  out.json["pass"] = out.pass;
  out.header = {"total_curvature", "margin", "refined_total", "refinement_change", "closure_gap", "strict"};
  out.rows.push_back({rep.total_curvature, rep.margin, rep.refined_total, rep.refinement_change, rep.closure_gap,
                      rep.strict});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  CLI::App app{"Curvature and Gauss-Bonnet computations in the Heisenberg group"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Pass tolerance of the command's check");
  app.add_option("--tau-h", g.tau_h, "Horizontality threshold");
  app.add_option("--tau-char", g.tau_char, "Characteristic threshold");
  app.add_option("--eps", g.eps, "Exclusion radii or tube radii")->delimiter(',');
  app.add_option("--L", g.L, "Approximation parameters")->delimiter(',');

  CurveArgs ca;
  auto* curve = app.add_subcommand("curve", "k0 along a curve (k0s with --u)");
  curve->add_option("--expr", ca.expr, "x1(t), x2(t), x3(t)")->required();
  curve->add_option("--const", ca.constants, "name=value,...");
  curve->add_option("--u", ca.u, "Defining function of a surface containing the curve");
  curve->add_option("--t0", ca.t0);
  curve->add_option("--t1", ca.t1);
  curve->add_option("--grid", ca.grid, "Number of equally spaced parameters in [t0, t1]");
  curve->add_option("--t", ca.ts, "Explicit parameters")->delimiter(',');
  curve->add_flag("--strict", ca.strict, "Treat ambiguous classifications as errors");

  SurfaceArgs sa;
  auto* surface = app.add_subcommand("surface", "K0 and H0 (and K_L, H_L with --L) at surface points");
  surface->add_option("--u", sa.u, "Defining function u(x1, x2, x3)")->required();
  surface->add_option("--const", sa.constants, "name=value,...");
  surface->add_option("--point", sa.points, "x1,x2,x3 (repeatable)");

  GaussBonnetArgs ga;
  auto* gb = app.add_subcommand("gauss-bonnet", "Gauss-Bonnet defect of a scene");
  gb->add_option("--scene", ga.scene, "Scene file")->required();
  gb->add_flag("--no-scan", ga.no_scan, "Skip the characteristic scan");

  SteinerArgs st;
  auto* steiner = app.add_subcommand("steiner", "Tube volume series");
  steiner->add_option("--region", st.region, "Scene file with the region")->required();
  steiner->add_option("--delta", st.delta, "Eikonal function");
  steiner->add_option("--order", st.order, "Highest power of eps");
  steiner->add_option("--g-point", st.g_points, "x1,x2,x3 for a g-identity check (repeatable)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep-L", "Finite-L values against their limits");
  sweep->add_option("--expr-curve", sw.curve, "x1(t), x2(t), x3(t)");
  sweep->add_option("--t", sw.ts, "Curve parameters")->delimiter(',');
  sweep->add_option("--u", sw.u, "Defining function");
  sweep->add_option("--point", sw.points, "x1,x2,x3 (repeatable)");
  sweep->add_option("--quantity", sw.quantity, "K or H for surface sweeps");
  sweep->add_option("--const", sw.constants, "name=value,...");

  auto* gallery = app.add_subcommand("gallery", "Built-in examples");
  gallery->require_subcommand(1);
  auto* glist = gallery->add_subcommand("list", "List entries");
  std::string entry;
  auto* grun = gallery->add_subcommand("run", "Run an entry or all");
  grun->add_option("name", entry, "Entry name or all")->required();

  FenchelArgs fa;
  auto* fenchel = app.add_subcommand("fenchel", "Total curvature of a closed horizontal curve");
  fenchel->add_option("--expr", fa.expr, "x1(t), x2(t), x3(t)")->required();
  fenchel->add_option("--const", fa.constants, "name=value,...");
  fenchel->add_option("--t0", fa.t0);
  fenchel->add_option("--t1", fa.t1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(g, InputError, "usage", e.what());
  }

  try {
    if (*curve) return g.command = "curve", emit(g, run_curve(g, ca));
    if (*surface) return g.command = "surface", emit(g, run_surface(g, sa));
    if (*gb) return g.command = "gauss-bonnet", emit(g, run_gauss_bonnet(g, ga));
    if (*steiner) return g.command = "steiner", emit(g, run_steiner(g, st));
    if (*sweep) return g.command = "sweep-L", emit(g, run_sweep(g, sw));
    if (*glist) return g.command = "gallery list", emit(g, run_gallery_list());
    if (*grun) return g.command = "gallery run", emit(g, run_gallery(entry));
    if (*fenchel) return g.command = "fenchel", emit(g, run_fenchel(g, fa));
  } catch (const expr::ParseError& e) {
    Json x;
    x["offset"] = e.offset();
    x["expected"] = e.expected();
    return emit_error(g, InputError, "parse", e.what(), x);
  } catch (const expr::EvalError& e) {
    Json x;
    x["offset"] = e.offset();
    x["length"] = e.length();
    return emit_error(g, InputError, "domain", e.what(), x);
  } catch (const DomainError& e) {
    return emit_error(g, InputError, "domain", e.what());
  } catch (const UsageError& e) {
    return emit_error(g, InputError, "usage", e.what());
  } catch (const SceneError& e) {
    return emit_error(g, InputError, "scene", e.what());
  } catch (const std::out_of_range& e) {
    return emit_error(g, InputError, "unknown-entry", e.what());
  } catch (const UndeclaredCharacteristicError& e) {
    return emit_error(g, CheckFailure, "undeclared-characteristic", e.what());
  } catch (const ClassificationError& e) {
    return emit_error(g, CheckFailure, "ambiguous-classification", e.what());
  } catch (const QuadratureError& e) {
    return emit_error(g, CheckFailure, "quadrature", e.what());
  } catch (const GeometryError& e) {
    return emit_error(g, InputError, "geometry", e.what());
  } catch (const std::exception& e) {
    return emit_error(g, InputError, "invalid-argument", e.what());
  }
  return InputError;
}
