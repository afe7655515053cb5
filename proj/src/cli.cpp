#include "frechet/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "frechet/coverage.hpp"
#include "frechet/curve.hpp"
#include "frechet/error.hpp"
#include "frechet/parallel.hpp"
#include "frechet/svg.hpp"

namespace frechet {

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["tolerance"] = Json{{"rel", c.tolerance.rel}, {"abs", c.tolerance.abs}};
  j["mode"] = to_string(c.mode);
  j["cross_check"] = c.cross_check;
  j["threads"] = c.threads;
  j["eps"] = c.eps;
  j["svg"] = c.svg_path;
  j["dump_graph"] = c.graph_path;
  j["budget"] = Json{{"pairs", c.budget.max_pairs},
                     {"candidates", c.budget.max_candidates},
                     {"chain_length", c.budget.max_chain_length},
                     {"seconds", c.budget.wall_clock_seconds},
                     {"max_level", c.budget.max_level},
                     {"search_steps", c.budget.max_search_steps},
                     {"pairs_m_2m", c.budget.pairs_m_2m},
                     {"enumeration", c.budget.mode == EnumerationMode::Prune ? "prune" : "raw"}};
  return j;
}

Tolerance parse_tolerance(const std::string& text) {
  Tolerance t;
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string rel = text.substr(0, comma);
    t.rel = std::stod(rel, &used);
    if (used != rel.size()) throw InputError("");
    if (comma != std::string::npos) {
      const std::string abs = text.substr(comma + 1);
      t.abs = std::stod(abs, &used);
      if (used != abs.size()) throw InputError("");
    }
  } catch (const std::exception&) {
    throw InputError("--tolerance: expected <rel>[,<abs>], got '" + text + "'");
  }
  t.check();
  return t;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot write file");
  f << text;
}

struct Inputs {
  std::string a, b;
};

int cmd_validate(const RunConfig&, const std::string& file, std::ostream& out) {
  const Surface s = load_surface(file);
  const ValidationReport r = validate(s);
  out << Json{{"valid", r.ok()}, {"issues", r.issues}}.dump() << "\n";
  return r.ok() ? kExitOk : kExitFalse;
}

int cmd_decide(const RunConfig& cfg, const Inputs& in, bool witness, std::ostream& out) {
  const SurfacePair p(load_surface(in.a), load_surface(in.b), cfg.threads);
  if (!cfg.graph_path.empty()) write_text(cfg.graph_path, dump_adjacency(build_graph(p, cfg.eps, cfg.tolerance)));
  std::vector<CellId> comp;
  const bool ans = decide(p, cfg.eps, cfg.tolerance, cfg.threads, &comp);
  out << (ans ? "true" : "false") << "\n";
  if (witness) {
    Json wc = Json::array();
    for (const auto& c : comp) wc.push_back(to_json(c));
    out << Json{{"witness_component", wc}}.dump() << "\n";
  }
  return ans ? kExitOk : kExitFalse;
}

int cmd_compute(const RunConfig& cfg, const Inputs& in, std::ostream& out) {
  const SurfacePair p(load_surface(in.a), load_surface(in.b), cfg.threads);
  const WeakFrechetResult r = compute(p, cfg.mode, cfg.tolerance, cfg.threads);
  Json j = to_json(r);
  if (cfg.cross_check) {
    const SearchMode other = cfg.mode == SearchMode::ExactCriticals ? SearchMode::Bisection : SearchMode::ExactCriticals;
    const WeakFrechetResult o = compute(p, other, cfg.tolerance, cfg.threads);
    const Tolerance ten = cfg.tolerance.scaled(10.0);
    j["cross_check"] = Json{{"mode", to_string(other)},
                            {"distance", o.distance},
                            {"agree", tol_equal(r.distance, o.distance, ten)}};
  }
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_criticals(const RunConfig& cfg, const Inputs& in, const std::vector<double>& with2c, std::ostream& out) {
  const SurfacePair p(load_surface(in.a), load_surface(in.b), cfg.threads);
  std::vector<CriticalValue> all = critical_values_C1(p, cfg.tolerance, cfg.threads);
  if (with2c.size() == 2) {
    if (!(with2c[0] <= with2c[1])) throw InputError("--with-2c: expected lo <= hi");
    const auto c2 = critical_values_2c(p, with2c[0], with2c[1], cfg.tolerance, cfg.threads);
    all.insert(all.end(), c2.begin(), c2.end());
    std::stable_sort(all.begin(), all.end(),
                     [](const CriticalValue& a, const CriticalValue& b) { return a.value < b.value; });
  }
  for (const auto& c : all) out << to_json(c).dump() << "\n";
  return kExitOk;
}

int cmd_semi(const RunConfig& cfg, const Inputs& in, std::ostream& out) {
  const Surface f = load_surface(in.a), g = load_surface(in.b);
  semi_compute_stream(f, g, cfg.budget, [&](const SemiBound& b) { out << to_json(b).dump() << "\n" << std::flush; });
  return kExitOk;
}

int cmd_curve(const RunConfig& cfg, const std::string& action, const Inputs& in, const std::string& variant,
              std::ostream& out) {
  const PolyCurve f = load_curve(in.a), g = load_curve(in.b);
  require_valid(f);
  require_valid(g);
  const CurveVariant v = variant == "weak" ? CurveVariant::Weak : CurveVariant::Frechet;
  if (!cfg.svg_path.empty()) write_text(cfg.svg_path, curve_free_space_svg(f, g, cfg.eps, cfg.tolerance));
  if (action == "decide") {
    const bool ans = v == CurveVariant::Weak ? curve_decide_weak(f, g, cfg.eps, cfg.tolerance)
                                             : curve_decide_frechet(f, g, cfg.eps, cfg.tolerance);
    out << (ans ? "true" : "false") << "\n";
    return ans ? kExitOk : kExitFalse;
  }
  out << Json{{"distance", curve_compute(f, g, v, cfg.tolerance)}, {"variant", variant}}.dump() << "\n";
  return kExitOk;
}

int cmd_dump_svg(const RunConfig& cfg, const std::string& kind, const Inputs& in, int triangle, std::ostream& out) {
  if (cfg.svg_path.empty()) throw InputError("dump-svg: --svg <path> is required");
  if (kind == "curve") {
    const PolyCurve f = load_curve(in.a), g = load_curve(in.b);
    write_text(cfg.svg_path, curve_free_space_svg(f, g, cfg.eps, cfg.tolerance));
    out << Json{{"written", Json::array({cfg.svg_path})}}.dump() << "\n";
    return kExitOk;
  }
  const SurfacePair p(load_surface(in.a), load_surface(in.b), cfg.threads);
  if (triangle >= p.m()) throw InputError("--triangle: index out of range");
  Json written = Json::array(), faces = Json::array();
  for (int k = 0; k < p.m(); ++k) {
    if (triangle >= 0 && k != triangle) continue;
    std::vector<Triangle3> partners;
    for (int l = 0; l < p.n(); ++l)
      if (cell_nonempty(p, {k, l}, cfg.eps, cfg.tolerance)) partners.push_back(p.g_triangles()[l]);
    TriangleArrangement a;
    const bool covered = triangle_covered(p.f_triangles()[k], partners, cfg.eps, cfg.tolerance, &a);
    const std::string path = triangle >= 0 ? cfg.svg_path : cfg.svg_path + "." + std::to_string(k) + ".svg";
    write_text(path, arrangement_svg(a));
    written.push_back(path);
    faces.push_back(Json{{"triangle", k}, {"faces", a.faces.size()}, {"covered", covered}});
  }
  out << Json{{"written", written}, {"arrangements", faces}}.dump() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak Frechet distance between triangulated surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string tolerance_text, mode_text = "exact";
  int threads = 0;
  app.add_option("--tolerance", tolerance_text, "Comparison tolerance <rel>[,<abs>]");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  Inputs in;
  auto pair_args = [&](CLI::App* sub) {
    sub->add_option("fileA", in.a, "First surface")->required();
    sub->add_option("fileB", in.b, "Second surface")->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", tolerance_text, "Comparison tolerance <rel>[,<abs>]");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  };

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a surface file");
  validate_cmd->add_option("file", validate_file)->required();
  common(validate_cmd);

  bool witness = false;
  auto* decide_cmd = app.add_subcommand("decide", "Is the weak Frechet distance at most eps?");
  pair_args(decide_cmd);
  common(decide_cmd);
  decide_cmd->add_option("--eps", cfg.eps)->required()->check(CLI::NonNegativeNumber);
  decide_cmd->add_flag("--witness", witness, "Print the extensive component");
  decide_cmd->add_option("--dump-graph", cfg.graph_path, "Write the free-space graph adjacency list");

  auto* compute_cmd = app.add_subcommand("compute", "Weak Frechet distance");
  pair_args(compute_cmd);
  common(compute_cmd);
  compute_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"exact", "bisect"}));
  compute_cmd->add_flag("--cross-check", cfg.cross_check, "Also run the other search mode");

  std::vector<double> with2c;
  auto* crit_cmd = app.add_subcommand("criticals", "List critical values");
  pair_args(crit_cmd);
  common(crit_cmd);
  crit_cmd->add_option("--with-2c", with2c, "Add type 2c values in [lo, hi]")->expected(2);

  std::string enumeration = "prune";
  auto* semi_cmd = app.add_subcommand("semi", "Stream upper bounds on the Frechet distance");
  pair_args(semi_cmd);
  common(semi_cmd);
  semi_cmd->add_option("--budget-pairs", cfg.budget.max_pairs)->check(CLI::NonNegativeNumber);
  semi_cmd->add_option("--budget-candidates", cfg.budget.max_candidates)->check(CLI::NonNegativeNumber);
  semi_cmd->add_option("--budget-chainlen", cfg.budget.max_chain_length)->check(CLI::PositiveNumber);
  semi_cmd->add_option("--budget-seconds", cfg.budget.wall_clock_seconds)->check(CLI::NonNegativeNumber);
  semi_cmd->add_option("--budget-steps", cfg.budget.max_search_steps)->check(CLI::PositiveNumber);
  semi_cmd->add_option("--max-level", cfg.budget.max_level)->check(CLI::NonNegativeNumber);
  semi_cmd->add_flag("--pairs-m-2m", cfg.budget.pairs_m_2m, "Visit only the pairs (m, 2m)");
  semi_cmd->add_option("--enumeration", enumeration)->check(CLI::IsMember({"prune", "raw"}));

  std::string curve_action, variant = "frechet";
  auto* curve_cmd = app.add_subcommand("curve", "Polygonal curve distances");
  curve_cmd->add_option("action", curve_action)->required()->check(CLI::IsMember({"decide", "compute"}));
  pair_args(curve_cmd);
  common(curve_cmd);
  curve_cmd->add_option("--eps", cfg.eps)->check(CLI::NonNegativeNumber);
  curve_cmd->add_option("--variant", variant)->check(CLI::IsMember({"frechet", "weak"}));
  curve_cmd->add_option("--svg", cfg.svg_path, "Write the free-space diagram");

  std::string svg_kind;
  int triangle = -1;
  auto* svg_cmd = app.add_subcommand("dump-svg", "Write SVG diagrams");
  svg_cmd->add_option("kind", svg_kind)->required()->check(CLI::IsMember({"surface", "curve"}));
  pair_args(svg_cmd);
  common(svg_cmd);
  svg_cmd->add_option("--eps", cfg.eps)->required()->check(CLI::NonNegativeNumber);
  svg_cmd->add_option("--svg", cfg.svg_path)->required();
  svg_cmd->add_option("--triangle", triangle, "Only this triangle of the first surface");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    cfg.tolerance = tolerance_text.empty() ? Tolerance{} : parse_tolerance(tolerance_text);
    cfg.threads = resolve_threads(threads);
    cfg.mode = mode_text == "bisect" ? SearchMode::Bisection : SearchMode::ExactCriticals;
    cfg.budget.mode = enumeration == "raw" ? EnumerationMode::Raw : EnumerationMode::Prune;
    for (const CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "curve") cfg.command += " " + curve_action;
    if (cfg.command == "dump-svg") cfg.command += " " + svg_kind;
    out << Json{{"config", to_json(cfg)}}.dump() << "\n";

    if (*validate_cmd) return cmd_validate(cfg, validate_file, out);
    if (*decide_cmd) return cmd_decide(cfg, in, witness, out);
    if (*compute_cmd) return cmd_compute(cfg, in, out);
    if (*crit_cmd) return cmd_criticals(cfg, in, with2c, out);
    if (*semi_cmd) return cmd_semi(cfg, in, out);
    if (*curve_cmd) return cmd_curve(cfg, curve_action, in, variant, out);
    if (*svg_cmd) return cmd_dump_svg(cfg, svg_kind, in, triangle, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}

}  // namespace frechet
