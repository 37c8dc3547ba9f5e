#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "expsubdiv/acceptance.hpp"
#include "expsubdiv/analysis.hpp"
#include "expsubdiv/serialize.hpp"
#include "expsubdiv/shapes.hpp"
#include "expsubdiv/subdivision.hpp"

namespace expsubdiv::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> scheme;
  std::optional<double> v_init;
  std::optional<int> levels;
  std::optional<std::string> space;
  std::optional<std::string> p;
  std::optional<std::string> topology;
  std::optional<std::string> out;
  std::optional<std::string> report;
  std::optional<double> tol;
  std::optional<int> kmax;
  std::optional<std::string> shape;
  std::optional<int> samples;
  std::optional<double> spacing;
  std::optional<std::string> input;
  std::optional<std::string> mode;
  std::optional<double> mutate_alpha;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write " + tmp.string());
    os << content;
    os.close();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("error while writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path);
  }
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("invalid JSON in " + what + ": " + e.what());
  }
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", std::abs(x) < 5e-13 ? 0.0 : x);
  return buf;
}

std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string format_complex(cplx c) {
  if (c.imag() == 0.0) return format_real(c.real());
  if (c.real() == 0.0) return format_real(c.imag()) + "i";
  return format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + format_real(std::abs(c.imag())) + "i";
}

std::string format_space(const ExponentialSpace& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += format_complex(s[i].theta) + ":" + std::to_string(s[i].tau);
  }
  return out + "}";
}

// Layers command-line flags over the file configuration.
json apply_flags(json cfg, const Flags& f) {
  if (f.scheme) cfg["scheme"] = *f.scheme;
  if (f.v_init) cfg["v_init"] = *f.v_init;
  if (f.levels) cfg["levels"] = *f.levels;
  if (f.space) cfg["space"] = parse_json(*f.space, "--space");
  if (f.p) {
    if (*f.p == "auto") {
      cfg["p"] = "auto";
    } else {
      try {
        std::size_t used = 0;
        cfg["p"] = std::stod(*f.p, &used);
        if (used != f.p->size()) throw std::invalid_argument(*f.p);
      } catch (const std::exception&) {
        throw UsageError("--p expects a real number or \"auto\", got " + *f.p);
      }
    }
  }
  if (f.topology) cfg["topology"] = *f.topology;
  if (f.out) cfg["out"] = *f.out;
  if (f.report) cfg["report"] = *f.report;
  if (f.tol) cfg["tol"] = *f.tol;
  if (f.kmax) cfg["kmax"] = *f.kmax;
  if (f.shape) cfg["shape"] = *f.shape;
  if (f.samples) cfg["samples"] = *f.samples;
  if (f.spacing) cfg["spacing"] = *f.spacing;
  if (f.input) cfg["input"] = *f.input;
  if (f.mode) cfg["mode"] = *f.mode;
  return cfg;
}

struct Experiment {
  Experiment(SymbolFamily f, ExponentialSpace s) : family(std::move(f)), space(std::move(s)) {}

  SymbolFamily family;
  ExponentialSpace space;
  std::optional<double> p;  // empty means "auto"
  int levels = 6;
  std::optional<Topology> topology;
  std::optional<ShapeKind> shape;
  int samples = 0;
  double spacing = 0.0;
  json input;
  std::optional<std::string> out;
  std::optional<std::string> report;
  double tol = kDefaultTolerance;
  int kmax = 8;
  std::string mode = "reproduce";
};

Experiment build_experiment(const json& cfg) {
  if (!cfg.is_object()) throw UsageError("configuration must be a JSON object");

  std::optional<ShapeKind> shape_kind;
  if (cfg.contains("shape") && !cfg["shape"].is_null()) {
    const auto name = cfg["shape"].get<std::string>();
    shape_kind = parse_shape_name(name);
    if (!shape_kind) throw UsageError("unknown shape \"" + name + "\"");
  }
  const Shape* sh = shape_kind ? &shape(*shape_kind) : nullptr;
  const double spacing = cfg.contains("spacing") ? cfg["spacing"].get<double>() : sh ? sh->default_spacing : 0.0;
  if (sh && !(spacing > 0.0)) throw UsageError("spacing must be positive");
  const int samples = cfg.contains("samples") ? cfg["samples"].get<int>() : sh ? sh->default_samples : 0;
  if (sh && samples < 1) throw UsageError("samples must be at least 1");

  // The scheme may be a name or a full family descriptor.
  json descriptor = json::object();
  if (!cfg.contains("scheme")) throw UsageError("no scheme given (use --scheme or \"scheme\" in the config)");
  if (cfg["scheme"].is_object()) descriptor = cfg["scheme"];
  else descriptor["scheme"] = cfg["scheme"];
  if (!descriptor.contains("v_init") && cfg.contains("v_init")) descriptor["v_init"] = cfg["v_init"];
  if (!descriptor.contains("space") && cfg.contains("space")) descriptor["space"] = cfg["space"];
  if (sh && !descriptor.contains("v_init")) descriptor["v_init"] = default_v_init(*sh, spacing);
  if (sh && !descriptor.contains("space"))
    descriptor["space"] = mixed_exponential_space(sh->frequency * spacing, 1);

  const auto name = descriptor.value("scheme", std::string());
  const auto kind = parse_scheme_name(name);
  if (!kind) throw UsageError("unknown scheme \"" + name + "\"");
  if (*kind != SchemeKind::exp_bspline && !descriptor.contains("v_init"))
    throw UsageError("scheme " + name + " needs --v-init (or a --shape to derive it from)");

  SymbolFamily family = family_from_json(descriptor);
  ExponentialSpace space = family.space();
  if (cfg.contains("space") && !cfg["space"].is_null()) space = cfg["space"].get<ExponentialSpace>();

  Experiment e(std::move(family), std::move(space));
  e.shape = shape_kind;
  e.samples = samples;
  e.spacing = spacing;

  if (cfg.contains("p") && !cfg["p"].is_null()) {
    const auto& p = cfg["p"];
    if (p.is_string()) {
      if (p.get<std::string>() != "auto") throw UsageError("p must be a real number or \"auto\"");
    } else {
      e.p = p.get<double>();
    }
  } else {
    e.p = e.family.declared_p();
  }

  e.levels = cfg.value("levels", 6);
  if (e.levels < 1) throw UsageError("levels must be at least 1");
  if (cfg.contains("topology")) {
    const auto t = cfg["topology"].get<std::string>();
    if (t == "open") e.topology = Topology::open;
    else if (t == "closed") e.topology = Topology::closed;
    else throw UsageError("topology must be open or closed, got \"" + t + "\"");
  }
  if (cfg.contains("input")) e.input = cfg["input"];
  if (cfg.contains("out")) e.out = cfg["out"].get<std::string>();
  if (cfg.contains("report")) e.report = cfg["report"].get<std::string>();
  e.tol = cfg.value("tol", kDefaultTolerance);
  if (!(e.tol > 0.0)) throw UsageError("tol must be positive");
  e.kmax = cfg.value("kmax", 8);
  if (e.kmax < 0) throw UsageError("kmax must be non-negative");
  e.mode = cfg.value("mode", std::string("reproduce"));
  if (e.mode != "generate" && e.mode != "reproduce" && e.mode != "solve-param")
    throw UsageError("mode must be generate, reproduce or solve-param, got \"" + e.mode + "\"");
  return e;
}

std::vector<std::vector<double>> points_from_json(const json& j) {
  if (!j.is_array()) throw UsageError("input points must be a JSON array");
  std::vector<std::vector<double>> pts;
  for (const auto& row : j) {
    if (row.is_number()) pts.push_back({row.get<double>()});
    else pts.push_back(row.get<std::vector<double>>());
  }
  return pts;
}

std::vector<std::vector<double>> points_from_text(const std::string& text, const std::string& path) {
  std::vector<std::vector<double>> pts;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    bool numeric = true;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (row.empty() && numeric) continue;
    if (!numeric || line.find('#') != std::string::npos) {
      if (pts.empty()) continue;  // header or comment before the data
      throw UsageError("non-numeric row in " + path + ": " + line);
    }
    pts.push_back(std::move(row));
  }
  return pts;
}

RefinedData load_input(const json& input, Topology topology, double p) {
  std::vector<std::vector<double>> pts;
  if (input.is_string()) {
    const auto s = input.get<std::string>();
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && s[first] == '[') {
      pts = points_from_json(parse_json(s, "--input"));
    } else {
      const std::string text = read_file(s);
      const auto lead = text.find_first_not_of(" \t\r\n");
      pts = lead != std::string::npos && text[lead] == '[' ? points_from_json(parse_json(text, s))
                                                           : points_from_text(text, s);
    }
  } else {
    pts = points_from_json(input);
  }
  if (pts.empty()) throw UsageError("input contains no points");
  const std::size_t dim = pts.front().size();
  if (dim < 1 || dim > 3) throw UsageError("input points must have 1 to 3 coordinates");
  std::vector<double> coords;
  for (const auto& q : pts) {
    if (q.size() != dim) throw UsageError("input points have inconsistent dimensions");
    coords.insert(coords.end(), q.begin(), q.end());
  }
  const long n = static_cast<long>(pts.size());
  const long offset = topology == Topology::closed ? 0 : -(n - 1) / 2;
  return {0, offset, static_cast<int>(dim), std::move(coords), p, topology};
}

struct SolvedP {
  std::optional<double> p;
  std::string diagnostic;
  ExponentialSpace space;
  bool subspace = false;
};

// Solves on the full space, falling back to its polynomial part when the
// scheme only reproduces polynomials.
SolvedP solve_p(const SymbolFamily& family, const ExponentialSpace& space, int kmax, double tol) {
  const auto full = solve_parametrization(family, space, kmax, tol);
  if (full.p) return {full.p, full.diagnostic, space, false};
  if (const auto i = space.index_of(0.0); i && space.size() > 1) {
    ExponentialSpace poly({{0.0, space[*i].tau}});
    const auto part = solve_parametrization(family, poly, kmax, tol);
    if (part.p) return {part.p, "full space: " + full.diagnostic, std::move(poly), true};
  }
  return {std::nullopt, full.diagnostic, space, false};
}

void print_report(std::ostream& os, const ConditionReport& r) {
  os << "scheme " << r.scheme << "  space " << format_space(r.space);
  if (r.p) os << "  p " << format_real(*r.p);
  os << "\nverdict " << to_string(r.verdict) << "  max residual " << format_sci(r.max_residual) << "  tol "
     << format_sci(r.tolerance) << "\n";
  if (!r.diagnostic.empty()) os << "note: " << r.diagnostic << "\n";

  struct Row {
    std::size_t root;
    int order;
    ConditionKind kind;
    double worst = 0.0;
    int worst_k = 0;
  };
  std::vector<Row> rows;
  for (const auto& level : r.per_level) {
    const double scale = level.scale > 0.0 ? level.scale : 1.0;
    for (const auto& e : level.entries) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& row) {
        return row.root == e.root && row.order == e.order && row.kind == e.kind;
      });
      if (it == rows.end()) it = rows.insert(rows.end(), Row{e.root, e.order, e.kind});
      const double rel = e.kind == ConditionKind::opposite_pair ? 1.0 : e.residual / scale;
      if (rel >= it->worst) {
        it->worst = rel;
        it->worst_k = level.k;
      }
    }
  }
  os << std::left << std::setw(6) << "root" << std::setw(16) << "theta" << std::setw(7) << "order" << std::setw(17)
     << "kind" << std::setw(12) << "max rel" << std::setw(8) << "at k"
     << "status\n";
  for (const auto& row : rows) {
    const bool ok = row.kind != ConditionKind::opposite_pair && row.worst <= r.tolerance;
    os << std::left << std::setw(6) << row.root + 1 << std::setw(16) << format_complex(r.space[row.root].theta)
       << std::setw(7) << row.order << std::setw(17) << to_string(row.kind) << std::setw(12) << format_sci(row.worst)
       << std::setw(8) << row.worst_k << (ok ? "ok" : "FAIL") << "\n";
  }
}

int cmd_refine(const Experiment& e, std::ostream& out, std::ostream& err) {
  std::optional<double> p = e.p;
  if (!p) {
    const auto solved = solve_p(e.family, e.space, e.kmax, e.tol);
    if (!solved.p) {
      err << "cannot resolve p: " << solved.diagnostic << "\n";
      return kPropertyFailure;
    }
    p = solved.p;
  }

  std::optional<RefinedData> data;
  const Shape* sh = e.shape ? &shape(*e.shape) : nullptr;
  if (!e.input.is_null()) {
    data = load_input(e.input, e.topology.value_or(sh ? sh->topology : Topology::open), *p);
  } else if (sh) {
    const auto sampled = sample_shape(*sh, e.samples, e.spacing, *p);
    const Topology t = e.topology.value_or(sh->topology);
    data.emplace(0, t == sh->topology ? sampled.offset() : 0, sampled.dim(),
                 std::vector<double>(sampled.coords().begin(), sampled.coords().end()), *p, t);
  } else {
    throw UsageError("refine needs --shape or --input");
  }

  std::vector<RefinedData> levels;
  try {
    levels = refine_levels(e.family, *data, e.levels);
  } catch (const std::domain_error& ex) {
    throw UsageError(ex.what());
  }

  std::ostringstream csv;
  write_csv(csv, levels);
  if (e.out) write_atomic(*e.out, csv.str());
  else out << csv.str();

  std::optional<double> distance;
  if (sh && e.input.is_null()) distance = reference_distance(*sh, levels.back(), e.spacing);

  std::ostream& summary = e.out ? out : err;
  summary << "scheme " << e.family.name();
  if (e.family.v_init()) summary << "  v_init " << format_real(*e.family.v_init());
  summary << "  p " << format_real(*p) << "  topology "
          << (data->topology() == Topology::closed ? "closed" : "open") << "\n";
  for (const auto& level : levels) summary << "level " << level.level() << ": " << level.size() << " points\n";
  if (distance) summary << "max distance to " << sh->name << ": " << format_sci(*distance) << "\n";

  if (e.report) {
    json rep{{"scheme", family_to_json(e.family)}, {"p", *p}, {"topology", data->topology() == Topology::closed ? "closed" : "open"}};
    json counts = json::array();
    for (const auto& level : levels) counts.push_back({{"level", level.level()}, {"points", level.size()}});
    rep["levels"] = std::move(counts);
    if (distance) {
      rep["shape"] = sh->name;
      rep["max_distance"] = *distance;
    }
    write_atomic(*e.report, rep.dump(2) + "\n");
  }
  return kPass;
}

int cmd_check(const Experiment& e, const std::string& mode, std::ostream& out, std::ostream& err) {
  if (mode == "solve-param") {
    const auto solved = solve_p(e.family, e.space, e.kmax, e.tol);
    json rep{{"scheme", e.family.name()}, {"space", e.space}, {"p", solved.p ? json(*solved.p) : json(nullptr)}};
    if (!solved.diagnostic.empty()) rep["diagnostic"] = solved.diagnostic;
    if (solved.subspace) rep["solved_on"] = solved.space;
    if (solved.p) {
      out << format_real(*solved.p) << "\n";
      if (solved.subspace) err << "p holds on the polynomial subspace " << format_space(solved.space) << " only\n";
      rep["report"] = check_reproduction(e.family, solved.space, *solved.p, e.kmax, e.tol);
    } else {
      err << "no valid p: " << solved.diagnostic << "\n";
    }
    if (e.report) write_atomic(*e.report, rep.dump(2) + "\n");
    return solved.p ? kPass : kPropertyFailure;
  }

  ConditionReport report;
  if (mode == "generate") {
    report = check_generation(e.family, e.space, e.kmax, e.tol);
  } else {
    std::optional<double> p = e.p;
    if (!p) {
      const auto solved = solve_p(e.family, e.space, e.kmax, e.tol);
      if (!solved.p) {
        err << "cannot resolve p: " << solved.diagnostic << "\n";
        return kPropertyFailure;
      }
      p = solved.p;
    }
    report = check_reproduction(e.family, e.space, *p, e.kmax, e.tol);
  }
  print_report(out, report);
  if (e.report) write_atomic(*e.report, json(report).dump(2) + "\n");
  return report.passed() ? kPass : kPropertyFailure;
}

int cmd_selftest(const Flags& f, std::ostream& out) {
  SelftestOptions o;
  if (f.kmax) {
    if (*f.kmax < 0) throw UsageError("kmax must be non-negative");
    o.k_max = *f.kmax;
    o.convergence_level = std::max(o.convergence_level, *f.kmax);
  }
  if (f.mutate_alpha) o.alpha_limit = *f.mutate_alpha;
  const auto invariants = run_invariants(o);
  const auto acceptance = run_acceptance(o);
  out << "invariants\n";
  print_results(out, invariants);
  out << "acceptance criteria\n";
  print_results(out, acceptance);
  const bool ok = all_passed(invariants) && all_passed(acceptance);
  out << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? kPass : kPropertyFailure;
}

// Each entry of a batch config inherits the top-level settings.
std::vector<json> expand_batch(const json& cfg) {
  if (!cfg.contains("experiments")) return {cfg};
  if (!cfg["experiments"].is_array()) throw UsageError("\"experiments\" must be an array");
  json base = cfg;
  base.erase("experiments");
  std::vector<json> out;
  for (const auto& item : cfg["experiments"]) {
    if (!item.is_object()) throw UsageError("each experiment must be a JSON object");
    json merged = base;
    merged.update(item);
    out.push_back(std::move(merged));
  }
  return out;
}

void add_experiment_options(CLI::App* sub, Flags& f, bool refine) {
  sub->add_option("--config", f.config, "JSON configuration file; flags override its values");
  sub->add_option("--scheme", f.scheme, "a1, a2, a3, a4 or exp_bspline");
  sub->add_option("--v-init", f.v_init, "initial level parameter v^(-1) > -1");
  sub->add_option("--space", f.space, "space as JSON {\"freqs\": [{\"theta\": [re, im], \"tau\": n}]}");
  sub->add_option("--p", f.p, "grid parametrization shift, a real number or auto");
  sub->add_option("--report", f.report, "write a JSON report to this path");
  sub->add_option("--tol", f.tol, "relative residual tolerance (default 1e-9)");
  sub->add_option("--kmax", f.kmax, "highest level checked (default 8)");
  if (refine) {
    sub->add_option("--levels", f.levels, "number of refinement steps (default 6)");
    sub->add_option("--topology", f.topology, "open or closed");
    sub->add_option("--out", f.out, "CSV output path (default stdout)");
    sub->add_option("--shape", f.shape, "sample a built-in curve");
    sub->add_option("--samples", f.samples, "number of curve samples");
    sub->add_option("--spacing", f.spacing, "curve parameter spacing");
    sub->add_option("--input", f.input, "points as inline JSON or a CSV/JSON file");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-stationary exponential subdivision: curve refinement and reproduction checks", "expsubdiv"};
  app.require_subcommand(1);
  Flags f;

  auto* refine = app.add_subcommand("refine", "refine points or a built-in curve and write CSV");
  add_experiment_options(refine, f, true);
  auto* check = app.add_subcommand("check", "check generation or reproduction conditions");
  add_experiment_options(check, f, false);
  check->add_option("--mode", f.mode, "generate, reproduce (default) or solve-param");
  auto* solve = app.add_subcommand("solve-param", "find the parametrization shift p");
  add_experiment_options(solve, f, false);
  auto* selftest = app.add_subcommand("selftest", "run the invariant and acceptance suites");
  selftest->add_option("--kmax", f.kmax, "highest level checked (default 8)");
  selftest->add_option("--mutate-alpha", f.mutate_alpha)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsageError;
  }

  try {
    if (selftest->parsed()) return cmd_selftest(f, out);

    json cfg = json::object();
    if (f.config) cfg = parse_json(read_file(*f.config), *f.config);
    int worst = kPass;
    for (const auto& item : expand_batch(cfg)) {
      const Experiment e = build_experiment(apply_flags(item, f));
      int code = kPass;
      if (refine->parsed()) code = cmd_refine(e, out, err);
      else if (solve->parsed()) code = cmd_check(e, "solve-param", out, err);
      else code = cmd_check(e, e.mode, out, err);
      worst = std::max(worst, code);
    }
    return worst;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const json::exception& e) {
    err << "error: bad configuration value: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace expsubdiv::cli
