#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "permlab/permlab.h"

namespace permlab_cli {

int exit_code(int status);

namespace {

using json = nlohmann::ordered_json;

struct Failure {
  plab_status status;
  std::string message;
};

void check(plab_status st) {
  if (st != PLAB_OK) throw Failure{st, plab_last_error()};
}

[[noreturn]] void invalid(const std::string& message) { throw Failure{PLAB_INVALID_INPUT, message}; }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using PermPtr = std::unique_ptr<plab_perm, Deleter<plab_perm, plab_perm_free>>;
using ClassPtr = std::unique_ptr<plab_class, Deleter<plab_class, plab_class_free>>;
using SolverPtr = std::unique_ptr<plab_solver, Deleter<plab_solver, plab_solver_free>>;
using ExperimentPtr = std::unique_ptr<plab_experiment, Deleter<plab_experiment, plab_experiment_free>>;
using TablePtr = std::unique_ptr<plab_table, Deleter<plab_table, plab_table_free>>;

struct Params {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
  std::string json_path;
  plab_limits limits{};

  std::string class_expr;
  std::string solver = "auto";
  std::string input;
  std::size_t max_n = 0;
  std::vector<std::size_t> lengths;
  std::size_t base = 10000;
  std::size_t samples = 1000;
  bool raw = false;
  std::size_t n = 10000;
  double alpha = 0.45;
  double beta = 0.3;
  double s = 0;
  std::string table = "L2";
  double scale = 1.0;
  std::size_t rungs = 8;
  std::string manifest;
};

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Published values carry their printed precision.
std::string fmt_paper(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string join(const std::vector<std::string>& parts, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Flat key=value file; '#' starts a comment line.
std::vector<std::pair<std::string, std::string>> load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) invalid("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(f, line); ++lineno) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || trim(t.substr(0, eq)).empty()) {
      invalid("config " + path + ":" + std::to_string(lineno) + ": expected key=value, got '" + t + "'");
    }
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

CLI::Option* find_option(CLI::App* app, const std::string& name) {
  if (auto* o = app->get_option_no_throw("--" + name)) return o;
  return nullptr;
}

// Records every option that carries a value, after config merge.
json resolved_parameters(CLI::App& app, CLI::App* sub) {
  json params = json::object();
  auto add = [&](CLI::App* a) {
    for (const CLI::Option* o : a->get_options()) {
      const std::string name = o->get_single_name();
      if (name == "help" || name == "config" || name == "version" || name.empty()) continue;
      if (o->get_positional() && !o->nonpositional()) {
        if (o->count()) params[name] = join(o->results());
        continue;
      }
      if (o->count()) {
        params[name] = join(o->results());
      } else if (!o->get_default_str().empty()) {
        params[name] = o->get_default_str();
      }
    }
  };
  add(&app);
  add(sub);
  return params;
}

struct Context {
  Params& p;
  std::string subcommand;
  json parameters;
  std::istream& in;
  std::ostream& out;
  std::ostream& err;

  void write_manifest(const std::string& path) const {
    json m;
    m["subcommand"] = subcommand;
    m["parameters"] = parameters;
    m["version"] = plab_version();
    m["timestamp"] = timestamp();
    m["master_seed"] = p.seed;
    m["output"] = path;
    std::ofstream f(path + ".manifest.json");
    if (!f) invalid("cannot write " + path + ".manifest.json");
    f << m.dump(2) << "\n";
  }

  // Writes to --out, or standard output when unset.
  void emit(const std::string& text) const {
    if (p.out.empty()) {
      out << text;
      return;
    }
    std::ofstream f(p.out, std::ios::binary);
    if (!f) invalid("cannot write " + p.out);
    f << text;
    f.close();
    write_manifest(p.out);
  }

  void emit_json(const json& j) const {
    if (p.json_path.empty()) return;
    std::ofstream f(p.json_path, std::ios::binary);
    if (!f) invalid("cannot write " + p.json_path);
    f << j.dump(2) << "\n";
    f.close();
    write_manifest(p.json_path);
  }

  void warn(const std::string& message) const {
    err << json{{"warning", message}}.dump() << "\n";
  }
};

ClassPtr parse_class(const std::string& expr) {
  if (expr.empty()) invalid("--class is required");
  plab_class* c = nullptr;
  check(plab_class_parse(expr.c_str(), &c));
  return ClassPtr(c);
}

bool is_leaf(const plab_class* c) { return std::string(plab_class_describe(c)).rfind("av(", 0) == 0; }

void run_solve(const Context& ctx) {
  const ClassPtr cls = parse_class(ctx.p.class_expr);
  plab_solver* raw = nullptr;
  check(plab_solver_create(cls.get(), ctx.p.solver.c_str(), &ctx.p.limits, &raw));
  const SolverPtr solver(raw);

  std::ifstream file;
  std::istream* src = &ctx.in;
  if (!ctx.p.input.empty() && ctx.p.input != "-") {
    file.open(ctx.p.input);
    if (!file) invalid("cannot open input " + ctx.p.input);
    src = &file;
  }
  std::string text;
  json results = json::array();
  std::string line;
  for (std::size_t lineno = 1; std::getline(*src, line); ++lineno) {
    if (trim(line).empty()) continue;
    plab_perm* pp = nullptr;
    if (plab_perm_parse(line.c_str(), &pp) != PLAB_OK) {
      invalid("input line " + std::to_string(lineno) + ": " + plab_last_error());
    }
    const PermPtr perm(pp);
    std::size_t length = 0;
    std::vector<std::size_t> witness(plab_perm_size(perm.get()));
    check(plab_solve(solver.get(), perm.get(), &length, witness.data()));
    witness.resize(length);
    std::vector<std::string> parts;
    for (std::size_t q : witness) parts.push_back(std::to_string(q));
    text += std::to_string(length) + "\t" + join(parts) + "\n";
    results.push_back({{"length", length}, {"witness", witness}});
  }
  ctx.emit(text);
  ctx.emit_json({{"class", plab_class_describe(cls.get())}, {"solver", plab_solver_name(solver.get())},
                 {"results", results}});
}

std::vector<std::uint64_t> counts_for(const Context& ctx, const plab_class* cls) {
  std::size_t max_n = ctx.p.max_n;
  if (max_n == 0) max_n = is_leaf(cls) ? ctx.p.limits.count_leaf_max : ctx.p.limits.count_composite_max;
  std::vector<std::uint64_t> counts(max_n);
  check(plab_count_avoiders(cls, max_n, ctx.p.threads, &ctx.p.limits, counts.data()));
  return counts;
}

void run_count(const Context& ctx) {
  if (ctx.p.max_n == 0) invalid("--max-n is required");
  const ClassPtr cls = parse_class(ctx.p.class_expr);
  const auto counts = counts_for(ctx, cls.get());
  std::vector<std::string> parts;
  for (auto c : counts) parts.push_back(std::to_string(c));
  ctx.emit(join(parts) + "\n");
  ctx.emit_json({{"class", plab_class_describe(cls.get())}, {"counts", counts}});
}

void run_estimate(const Context& ctx) {
  const ClassPtr cls = parse_class(ctx.p.class_expr);
  const auto counts = counts_for(ctx, cls.get());
  std::vector<double> roots(counts.size()), ratios(counts.size() > 1 ? counts.size() - 1 : 1);
  check(plab_sw_estimate(counts.data(), counts.size(), roots.data(), ratios.data()));
  int has_known = 0;
  double known = 0;
  const char* citation = nullptr;
  check(plab_class_known_limit(cls.get(), &has_known, &known, &citation));

  std::string text = "n,count,root,ratio\n";
  json rows = json::array();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double ratio = i + 1 < counts.size() ? ratios[i] : std::nan("");
    text += std::to_string(i + 1) + "," + std::to_string(counts[i]) + "," + fmt(roots[i]) + "," + fmt(ratio) + "\n";
    rows.push_back({{"n", i + 1},
                    {"count", counts[i]},
                    {"root", roots[i]},
                    {"ratio", std::isnan(ratio) ? json(nullptr) : json(ratio)}});
  }
  if (has_known) text += "# known limit " + fmt(known) + ": " + citation + "\n";
  ctx.emit(text);
  ctx.emit_json({{"class", plab_class_describe(cls.get())},
                 {"rows", rows},
                 {"known_limit", has_known ? json{{"value", known}, {"citation", citation}} : json(nullptr)}});
}

std::vector<std::size_t> ladder(const Params& p) {
  if (!p.lengths.empty()) return p.lengths;
  std::vector<std::size_t> out;
  for (int k = 0; k < 8; ++k) out.push_back(p.base << k);
  return out;
}

ExperimentPtr run_rungs(const Context& ctx, const std::vector<std::size_t>& lengths) {
  const ClassPtr cls = parse_class(ctx.p.class_expr);
  plab_experiment_config cfg{};
  cfg.class_expr = ctx.p.class_expr.c_str();
  cfg.lengths = lengths.data();
  cfg.num_lengths = lengths.size();
  cfg.samples = ctx.p.samples;
  cfg.master_seed = ctx.p.seed;
  cfg.solver = ctx.p.solver.c_str();
  cfg.threads = ctx.p.threads;
  cfg.limits = &ctx.p.limits;
  plab_experiment* e = nullptr;
  check(plab_experiment_run(&cfg, &e));
  return ExperimentPtr(e);
}

std::string status_name(plab_status s) {
  switch (s) {
    case PLAB_OK: return "ok";
    case PLAB_INVALID_INPUT: return "invalid_input";
    case PLAB_RESOURCE_LIMIT: return "resource_limit";
    default: return "internal";
  }
}

void run_experiment(const Context& ctx) {
  const ClassPtr cls = parse_class(ctx.p.class_expr);
  const std::string canonical = plab_class_describe(cls.get());
  const ExperimentPtr e = run_rungs(ctx, ladder(ctx.p));
  std::string text = "class,n,samples,master_seed,mean,stddev,c_hat,wall_time_s\n";
  json rows = json::array();
  std::size_t failed = 0;
  plab_status worst = PLAB_OK;
  for (std::size_t i = 0; i < plab_experiment_rows(e.get()); ++i) {
    plab_sample_stats st{};
    check(plab_experiment_row(e.get(), i, &st));
    json row{{"class", canonical}, {"n", st.n}, {"samples", st.samples}, {"master_seed", st.master_seed},
             {"stream_id", st.stream_id}};
    if (st.status != PLAB_OK) {
      ++failed;
      worst = std::max(worst, st.status);
      ctx.warn("n=" + std::to_string(st.n) + ": " + plab_experiment_error(e.get(), i));
      text += csv_field(canonical) + "," + std::to_string(st.n) + "," + std::to_string(st.samples) + "," +
              std::to_string(st.master_seed) + ",,,," + fmt(st.wall_time_s) + "\n";
      row["error"] = plab_experiment_error(e.get(), i);
      row["wall_time_s"] = st.wall_time_s;
      rows.push_back(row);
      continue;
    }
    text += csv_field(canonical) + "," + std::to_string(st.n) + "," + std::to_string(st.samples) + "," +
            std::to_string(st.master_seed) + "," + fmt(st.mean) + "," + fmt(st.stddev) + "," + fmt(st.c_hat) +
            "," + fmt(st.wall_time_s) + "\n";
    row["mean"] = st.mean;
    row["stddev"] = st.stddev;
    row["c_hat"] = st.c_hat;
    row["wall_time_s"] = st.wall_time_s;
    if (ctx.p.raw) {
      std::size_t count = 0;
      const std::uint32_t* lengths = plab_experiment_lengths(e.get(), i, &count);
      row["lengths"] = std::vector<std::uint32_t>(lengths, lengths + count);
    }
    rows.push_back(row);
  }
  ctx.emit(text);
  ctx.emit_json({{"class", canonical}, {"rows", rows}});
  if (failed == plab_experiment_rows(e.get())) throw Failure{worst, "every length failed"};
}

plab_table_id table_id(const std::string& name) {
  if (name == "L2" || name == "l2" || name == "1") return PLAB_TABLE_L2;
  if (name == "L" || name == "l" || name == "2") return PLAB_TABLE_L;
  invalid("unknown table '" + name + "' (expected L2 or L)");
}

void run_table(const Context& ctx) {
  plab_table_config cfg{};
  cfg.table = table_id(ctx.p.table);
  cfg.scale = ctx.p.scale;
  cfg.rungs = ctx.p.rungs;
  cfg.master_seed = ctx.p.seed;
  cfg.solver = ctx.p.solver.c_str();
  cfg.threads = ctx.p.threads;
  cfg.limits = &ctx.p.limits;
  plab_table* raw = nullptr;
  check(plab_table_run(&cfg, &raw));
  const TablePtr t(raw);

  const std::string cls = plab_table_class(t.get());
  std::string text =
      "class,n,samples,master_seed,paper_mean,mean,paper_stddev,stddev,paper_c_hat,c_hat,z_mean,status,"
      "wall_time_s\n";
  json rows = json::array();
  for (std::size_t i = 0; i < plab_table_rows(t.get()); ++i) {
    plab_table_row r{};
    check(plab_table_row_get(t.get(), i, &r));
    const plab_sample_stats& o = r.observed;
    json row{{"n", r.n},
             {"paper_mean", r.paper_mean},
             {"paper_stddev", r.paper_stddev},
             {"paper_c_hat", r.paper_c_hat}};
    const std::string head = csv_field(cls) + "," + std::to_string(r.n) + "," + std::to_string(o.samples) + "," +
                             std::to_string(o.master_seed) + ",";
    if (r.skipped) {
      ctx.warn("skipping n=" + std::to_string(r.n) + ": " + plab_table_error(t.get(), i));
      text += head + fmt_paper(r.paper_mean) + ",," + fmt_paper(r.paper_stddev) + ",," + fmt_paper(r.paper_c_hat) + ",,,skipped," +
              fmt(o.wall_time_s) + "\n";
      row["skipped"] = plab_table_error(t.get(), i);
    } else {
      text += head + fmt_paper(r.paper_mean) + "," + fmt(o.mean) + "," + fmt_paper(r.paper_stddev) + "," + fmt(o.stddev) + "," +
              fmt_paper(r.paper_c_hat) + "," + fmt(o.c_hat) + "," + fmt(r.z_mean) + ",ok," + fmt(o.wall_time_s) + "\n";
      row["mean"] = o.mean;
      row["stddev"] = o.stddev;
      row["c_hat"] = o.c_hat;
      row["z_mean"] = r.z_mean;
      if (ctx.p.raw) {
        std::size_t count = 0;
        const std::uint32_t* lengths = plab_table_lengths(t.get(), i, &count);
        row["lengths"] = std::vector<std::uint32_t>(lengths, lengths + count);
      }
    }
    row["wall_time_s"] = o.wall_time_s;
    rows.push_back(row);
  }
  ctx.emit(text);
  ctx.emit_json({{"class", cls}, {"samples", plab_table_samples(t.get())}, {"rows", rows}});
}

// One rung of samples for the property checks.
std::vector<std::uint32_t> sample_lengths(const Context& ctx) {
  const ExperimentPtr e = run_rungs(ctx, {ctx.p.n});
  plab_sample_stats st{};
  check(plab_experiment_row(e.get(), 0, &st));
  if (st.status != PLAB_OK) throw Failure{st.status, plab_experiment_error(e.get(), 0)};
  std::size_t count = 0;
  const std::uint32_t* lengths = plab_experiment_lengths(e.get(), 0, &count);
  return {lengths, lengths + count};
}

void run_concentration(const Context& ctx) {
  const ClassPtr cls = parse_class(ctx.p.class_expr);
  const auto lengths = sample_lengths(ctx);
  plab_concentration r{};
  check(plab_check_concentration(lengths.data(), lengths.size(), ctx.p.n, ctx.p.alpha, ctx.p.beta, &r));
  const std::string canonical = plab_class_describe(cls.get());
  ctx.emit("class,n,samples,master_seed,alpha,beta,deviation,empirical_tail,adjusted_tail,log_bound,bound,satisfied\n" +
           csv_field(canonical) + "," + std::to_string(r.n) + "," + std::to_string(r.samples) + "," +
           std::to_string(ctx.p.seed) + "," + fmt(r.alpha) + "," + fmt(r.beta) + "," + fmt(r.deviation) + "," +
           fmt(r.empirical_tail) + "," + fmt(r.adjusted_tail) + "," + fmt(r.log_bound) + "," + fmt(r.bound) + "," +
           (r.satisfied ? "true" : "false") + "\n");
  ctx.emit_json({{"class", canonical},
                 {"n", r.n},
                 {"samples", r.samples},
                 {"master_seed", ctx.p.seed},
                 {"alpha", r.alpha},
                 {"beta", r.beta},
                 {"deviation", r.deviation},
                 {"empirical_tail", r.empirical_tail},
                 {"adjusted_tail", r.adjusted_tail},
                 {"log_bound", r.log_bound},
                 {"bound", r.bound},
                 {"satisfied", r.satisfied != 0}});
}

void run_tail(const Context& ctx) {
  const ClassPtr cls = parse_class(ctx.p.class_expr);
  double s = ctx.p.s;
  if (s == 0) check(plab_default_tail_s(cls.get(), &ctx.p.limits, &s));
  const auto lengths = sample_lengths(ctx);
  plab_tail r{};
  check(plab_check_tail(lengths.data(), lengths.size(), ctx.p.n, s, &r));
  const std::string canonical = plab_class_describe(cls.get());
  ctx.emit("class,n,samples,master_seed,s,threshold,empirical_exceed,max_observed,log_bound,bound,vacuous\n" +
           csv_field(canonical) + "," + std::to_string(r.n) + "," + std::to_string(r.samples) + "," +
           std::to_string(ctx.p.seed) + "," + fmt(r.s) + "," + fmt(r.threshold) + "," + fmt(r.empirical_exceed) +
           "," + std::to_string(r.max_observed) + "," + fmt(r.log_bound) + "," + fmt(r.bound) + "," +
           (r.vacuous ? "true" : "false") + "\n");
  ctx.emit_json({{"class", canonical},
                 {"n", r.n},
                 {"samples", r.samples},
                 {"master_seed", ctx.p.seed},
                 {"s", r.s},
                 {"threshold", r.threshold},
                 {"empirical_exceed", r.empirical_exceed},
                 {"max_observed", r.max_observed},
                 {"log_bound", r.log_bound},
                 {"bound", r.bound},
                 {"vacuous", r.vacuous != 0}});
}

void report(std::ostream& err, plab_status status, const std::string& message) {
  err << json{{"error", status_name(status)}, {"message", message}}.dump() << "\n";
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err, int depth);

// Rebuilds a command line from a manifest; --out / --json given to replay win.
std::vector<std::string> replay_args(const Params& p) {
  std::ifstream f(p.manifest);
  if (!f) invalid("cannot open manifest " + p.manifest);
  json m;
  try {
    f >> m;
  } catch (const json::exception& e) {
    invalid("manifest " + p.manifest + ": " + e.what());
  }
  if (!m.contains("subcommand") || !m.contains("parameters") || !m["parameters"].is_object()) {
    invalid("manifest " + p.manifest + ": missing subcommand or parameters");
  }
  std::vector<std::string> args{m["subcommand"].get<std::string>()};
  for (const auto& [key, value] : m["parameters"].items()) {
    if ((key == "out" && !p.out.empty()) || (key == "json" && !p.json_path.empty())) continue;
    args.push_back("--" + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()));
  }
  if (!p.out.empty()) args.push_back("--out=" + p.out);
  if (!p.json_path.empty()) args.push_back("--json=" + p.json_path);
  return args;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err, int depth) {
  Params p;
  plab_default_limits(&p.limits);
  p.threads = std::max(1u, std::thread::hardware_concurrency());

  CLI::App app{"permlab: longest pattern-avoiding subsequences and Monte Carlo experiments", "permlab"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(plab_version()));

  app.add_option("--threads", p.threads, "worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", p.seed, "master seed");
  app.add_option("--config", p.config, "flat key=value file; flags override it");
  app.add_option("--out", p.out, "output path (default: stdout)");
  app.add_option("--json", p.json_path, "JSON output path");
  app.add_option("--oracle-max", p.limits.oracle_max, "brute-force solver length limit");
  app.add_option("--sum-max", p.limits.sum_max, "direct-sum solver length limit");
  app.add_option("--merge-max", p.limits.merge_max, "merge membership length limit");
  app.add_option("--leaf-max", p.limits.count_leaf_max, "enumeration limit for basis classes");
  app.add_option("--composite-max", p.limits.count_composite_max, "enumeration limit for constructed classes");

  auto add_class = [&](CLI::App* sub) { sub->add_option("--class", p.class_expr, "class expression, e.g. av(231,312)"); };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--solver", p.solver, "auto, oracle, or a named algorithm");
  };

  auto* solve = app.add_subcommand("solve", "longest subsequence in a class, one input permutation per line");
  add_class(solve);
  add_solver(solve);
  solve->add_option("--input", p.input, "input file (default: stdin)");

  auto* count = app.add_subcommand("count", "count class members of each length");
  add_class(count);
  count->add_option("--max-n", p.max_n, "largest length");

  auto* estimate = app.add_subcommand("estimate", "Stanley-Wilf limit estimate from exact counts");
  add_class(estimate);
  estimate->add_option("--max-n", p.max_n, "largest length (default: the enumeration limit)");

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo estimate of c over a length ladder");
  add_class(experiment);
  add_solver(experiment);
  experiment->add_option("--lengths", p.lengths, "comma-separated lengths (default: base * 2^k, k=0..7)")
      ->delimiter(',');
  experiment->add_option("--base", p.base, "ladder base when --lengths is absent");
  experiment->add_option("--samples", p.samples, "samples per length");
  experiment->add_flag("--raw", p.raw, "include per-sample lengths in JSON");

  auto* table = app.add_subcommand("reproduce-table", "rerun a published table and compare");
  table->add_option("--table", p.table, "L2 (table 1) or L (table 2)");
  table->add_option("--scale", p.scale, "samples per rung = 1000 * scale");
  table->add_option("--rungs", p.rungs, "leading rungs to run");
  add_solver(table);
  table->add_flag("--raw", p.raw, "include per-sample lengths in JSON");

  auto* conc = app.add_subcommand("check-concentration", "empirical concentration around the mean");
  add_class(conc);
  add_solver(conc);
  conc->add_option("--n", p.n, "permutation length");
  conc->add_option("--samples", p.samples, "samples");
  conc->add_option("--alpha", p.alpha, "deviation exponent, > 1/3");
  conc->add_option("--beta", p.beta, "bound exponent, < min(alpha, 3 alpha - 1)");

  auto* tail = app.add_subcommand("check-tail", "empirical upper tail against 2e sqrt(s n)");
  add_class(tail);
  add_solver(tail);
  tail->add_option("--n", p.n, "permutation length");
  tail->add_option("--samples", p.samples, "samples");
  tail->add_option("--s", p.s, "growth bound (default: known limit or largest count ratio)");

  auto* replay = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  replay->add_option("manifest", p.manifest, "manifest path")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << plab_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    if (!args.empty() && args[0].rfind("-", 0) != 0 && !app.get_subcommand_no_throw(args[0])) {
      message = "unknown subcommand '" + args[0] + "'";
    }
    report(err, PLAB_INVALID_INPUT, message);
    err << app.help();
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!p.config.empty()) {
      for (const auto& [key, value] : load_config(p.config)) {
        CLI::Option* opt = find_option(sub, key);
        if (!opt) opt = find_option(&app, key);
        if (!opt || key == "config") {
          err << json{{"warning", "config " + p.config + ": unknown key '" + key + "' ignored"}}.dump() << "\n";
          continue;
        }
        if (opt->count()) continue;
        try {
          opt->add_result(value);
          opt->run_callback();
        } catch (const CLI::Error& e) {
          invalid("config " + p.config + ": bad value for " + key + ": " + e.what());
        }
      }
    }

    if (sub == replay) {
      if (depth > 0) invalid("a manifest cannot replay another manifest");
      return run(replay_args(p), in, out, err, depth + 1);
    }

    Context ctx{p, sub->get_name(), resolved_parameters(app, sub), in, out, err};
    if (sub == solve) run_solve(ctx);
    else if (sub == count) run_count(ctx);
    else if (sub == estimate) run_estimate(ctx);
    else if (sub == experiment) run_experiment(ctx);
    else if (sub == table) run_table(ctx);
    else if (sub == conc) run_concentration(ctx);
    else if (sub == tail) run_tail(ctx);
    return 0;
  } catch (const Failure& f) {
    report(err, f.status, f.message);
    return exit_code(f.status);
  } catch (const std::exception& e) {
    report(err, PLAB_INTERNAL, e.what());
    return 3;
  }
}

}  // namespace

int exit_code(int status) {
  switch (status) {
    case PLAB_OK: return 0;
    case PLAB_INVALID_INPUT: return 1;
    case PLAB_RESOURCE_LIMIT: return 2;
    default: return 3;
  }
}

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  return run(args, in, out, err, 0);
}

}  // namespace permlab_cli
