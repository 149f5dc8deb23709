#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "modp/environments.hpp"
#include "modp/metrics.hpp"
#include "modp/model_io.hpp"
#include "modp/momdp.hpp"
#include "modp/solvers.hpp"
#include "reproduce.hpp"

namespace modp::cli {

namespace {

// Carries an exit code out of a subcommand handler.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Failure{code, std::move(message)}; }

double parse_real(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    fail(kExitError, what + ": '" + text + "' is not a number");
  }
  return value;
}

std::vector<double> parse_point(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(parse_real(field, what));
  if (out.empty()) fail(kExitError, what + ": empty point");
  return out;
}

std::optional<double> default_budget(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0.0)) fail(kExitError, "--budget must be positive");
    return flag;
  }
  if (const char* env = std::getenv(kBudgetVariable); env && *env) {
    const double seconds = parse_real(env, kBudgetVariable);
    if (!(seconds > 0.0)) fail(kExitError, std::string(kBudgetVariable) + " must be positive");
    return seconds;
  }
  return std::nullopt;
}

std::string describe(const Violation& v, const Momdp& m) {
  std::string where;
  if (v.state) {
    where = "state " + m.state(*v.state).id;
    if (v.action && *v.action < m.actions(*v.state).size()) where += " action " + m.action(*v.state, *v.action).name;
    where += ": ";
  }
  return where + v.message;
}

void print_stats(const Momdp& m, std::ostream& out) {
  const ModelStats s = compute_stats(m);
  out << "states: " << m.state_count() << '\n'
      << "objectives: " << m.objectives() << '\n'
      << "gamma: " << format_real(m.gamma()) << '\n'
      << "r_min: " << format_real(s.r_min) << '\n'
      << "r_max: " << format_real(s.r_max) << '\n'
      << "R: " << format_real(s.range) << '\n'
      << "acyclic: " << (s.acyclic ? "yes" : "no") << '\n'
      << "max_episode_length: " << (s.max_episode_length ? std::to_string(*s.max_episode_length) : "unbounded") << '\n';
}

Momdp read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitError, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return load_model(text.str());
  } catch (const ParseError& e) {
    fail(kExitInvalidModel, path + ": " + e.what());
  }
}

void require_valid(const Momdp& m, std::ostream& err) {
  const auto violations = validate(m);
  if (violations.empty()) return;
  for (const auto& v : violations) err << "violation: " << describe(v, m) << '\n';
  fail(kExitInvalidModel, "invalid model (" + std::to_string(violations.size()) + " violations)");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) fail(kExitError, "cannot write " + path);
}

// ---- env ------------------------------------------------------------------

struct EnvArgs {
  std::string name;
  int d = 3;
  std::string kind;
  int columns = 10;
  std::optional<double> p;
  int n = 3;
  std::string noise = "all";
  int indexing = 1;
  std::optional<double> gamma;
  std::string out;
};

Momdp build_env(const EnvArgs& a) {
  if (a.name == "hansen") {
    if (a.kind.empty() || a.kind == "standard") return env::hansen(a.d);
    return env::hansen_variant(a.d, env::parse_hansen_kind(a.kind));
  }
  if (a.name == "sdst-rd") return env::sdst_rd(a.columns, a.p.value_or(0.8));
  if (a.name == "pyramid") {
    env::PyramidOptions options;
    options.p_intended = a.p.value_or(0.95);
    options.noise = a.noise == "others" ? env::PyramidNoise::kUniformOthers : env::PyramidNoise::kUniformAll;
    options.indexing = a.indexing == 0 ? env::PyramidIndexing::kZeroBased : env::PyramidIndexing::kOneBased;
    return env::pyramid(a.n, options);
  }
  return env::cyclic_example(env::parse_cyclic_kind(a.kind.empty() ? "stochastic-loop" : a.kind));
}

void run_env(const EnvArgs& a, std::ostream& out, std::ostream& err) {
  Momdp m = [&] {
    try {
      return build_env(a);
    } catch (const std::invalid_argument& e) {
      fail(kExitError, e.what());
    }
  }();
  if (a.gamma) {
    if (!(*a.gamma > 0.0 && *a.gamma <= 1.0)) fail(kExitError, "gamma out of (0,1]");
    m = m.with_gamma(*a.gamma);
  }
  const std::string text = save_model(m);
  if (a.out.empty()) {
    out << text;
    print_stats(m, err);
  } else {
    write_text(a.out, text);
    print_stats(m, out);
  }
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string alg;
  std::string model;
  std::string iters = "auto";
  bool iters_given = false;
  std::optional<double> eps;
  std::optional<double> gamma;
  std::string hv_ref;
  std::string out;
  std::string all_states;
  std::optional<double> budget;
  std::size_t threads = 1;
};

std::string all_states_csv(const Momdp& m, const FrontMap& fronts) {
  std::string text = "state";
  for (std::size_t i = 0; i < m.objectives(); ++i) text += ",obj" + std::to_string(i + 1);
  text += '\n';
  for (StateIndex s = 0; s < m.state_count(); ++s) {
    if (!fronts.has(s)) continue;
    for (auto v : fronts.at(s)) {
      text += m.state(s).id.find_first_of(",\"") == std::string::npos ? m.state(s).id : "\"" + m.state(s).id + "\"";
      for (double x : v) text += "," + format_real(x);
      text += '\n';
    }
  }
  return text;
}

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  if (a.alg == "WLP" && !a.eps) fail(kExitError, "--eps is required for WLP");
  if (a.alg != "WLP" && a.eps) fail(kExitError, "--eps applies to WLP only");
  if (a.alg == "B" && a.iters_given) fail(kExitError, "--iters applies to W and WLP only");
  if (a.eps && !(*a.eps > 0.0)) fail(kExitError, "--eps must be positive");
  if (a.threads == 0) fail(kExitError, "--threads must be at least 1");
  const auto budget = default_budget(a.budget);
  std::optional<std::vector<double>> ref;
  if (!a.hv_ref.empty()) {
    ref = parse_point(a.hv_ref, "--hv-ref");
    if (ref->size() != 2) fail(kExitError, "--hv-ref: hypervolume is 2-objective only");
  }

  Momdp m = read_model(a.model);
  if (a.gamma) {
    if (!(*a.gamma > 0.0 && *a.gamma <= 1.0)) fail(kExitError, "gamma out of (0,1]");
    m = m.with_gamma(*a.gamma);
  }
  require_valid(m, err);
  if (ref && m.objectives() != 2) fail(kExitError, "--hv-ref: hypervolume is 2-objective only");
  const ModelStats stats = compute_stats(m);

  std::size_t iterations = 0;
  if (a.alg != "B") {
    if (a.iters == "auto") {
      if (!stats.max_episode_length) fail(kExitInvalidModel, "--iters auto needs an acyclic model");
      iterations = *stats.max_episode_length;
    } else {
      const auto [ptr, ec] = std::from_chars(a.iters.data(), a.iters.data() + a.iters.size(), iterations);
      if (ec != std::errc{} || ptr != a.iters.data() + a.iters.size()) {
        fail(kExitError, "--iters must be a nonnegative integer or 'auto'");
      }
    }
  } else if (!stats.acyclic) {
    fail(kExitInvalidModel, "algorithm B requires a DAG");
  }

  SolveOptions options;
  options.threads = a.threads;
  if (budget) options.budget = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*budget));
  SolveReport report;
  if (a.alg == "B") {
    report = solve_b(m, options);
  } else if (a.alg == "W") {
    report = solve_w(m, iterations, options);
  } else {
    report = solve_wlp(m, iterations, *a.eps, options);
  }

  const bool done = report.completed();
  out << "algorithm: " << a.alg << '\n';
  if (a.eps) out << "eps: " << format_real(*a.eps) << '\n';
  if (a.alg != "B") out << "iterations: " << report.iterations_run << " of " << iterations << '\n';
  out << "status: " << (done ? "completed" : "budget-exceeded (partial result)") << '\n';

  const bool have_start = report.front_map.has(m.start());
  if (have_start) {
    const FrontSet& front = report.front_map.at(m.start());
    out << "cardinality: " << front.size() << '\n';
    if (ref) out << "hypervolume: " << format_real(hypervolume_2d(front, *ref)) << '\n';
  }
  out << "peak_vectors: " << report.peak_vector_count << '\n';
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.3f", report.wall_time.count());
  out << "seconds: " << seconds << '\n';

  if (have_start) {
    const std::string csv = export_front_csv(report.front_map.at(m.start()));
    if (a.out.empty()) {
      out << csv;
    } else {
      write_text(a.out, csv);
    }
  }
  if (!a.all_states.empty()) write_text(a.all_states, all_states_csv(m, report.front_map));
  if (!done) {
    err << "time budget exceeded\n";
    return kExitBudget;
  }
  return kExitOk;
}

// ---- reproduce ------------------------------------------------------------

struct ReproduceArgs {
  int table = 1;
  std::optional<double> budget;
  std::string out_dir;
  int max_instance = 0;
  std::string noise = "all";
  int indexing = 1;
  std::size_t threads = 1;
};

void run_reproduce(const ReproduceArgs& a, std::ostream& out) {
  ReproduceOptions options;
  options.table = a.table;
  options.budget = std::chrono::duration<double>(default_budget(a.budget).value_or(60.0));
  options.max_instance = a.max_instance;
  options.pyramid.noise = a.noise == "others" ? env::PyramidNoise::kUniformOthers : env::PyramidNoise::kUniformAll;
  options.pyramid.indexing = a.indexing == 0 ? env::PyramidIndexing::kZeroBased : env::PyramidIndexing::kOneBased;
  if (a.threads == 0) fail(kExitError, "--threads must be at least 1");
  options.threads = a.threads;
  ReproduceResult result;
  try {
    result = reproduce(options);
  } catch (const std::invalid_argument& e) {
    fail(kExitError, e.what());
  }
  out << result.table;
  if (!a.out_dir.empty()) {
    try {
      write_reproduction(a.out_dir, a.table, result);
    } catch (const std::exception& e) {
      fail(kExitError, e.what());
    }
  } else {
    out << '\n' << results_csv(a.table, result.cells);
  }
}

// ---- bounds, hv, validate -------------------------------------------------

struct BoundsArgs {
  std::string which;
  double range = 0.0;
  std::optional<std::uint64_t> depth;
  std::optional<std::uint64_t> iterations;
  unsigned objectives = 2;
  std::optional<double> eps;
};

void run_bounds(const BoundsArgs& a, std::ostream& out) {
  try {
    if (a.which == "prop1") {
      if (!a.depth) fail(kExitError, "prop1 needs --d");
      out << prop1_bound(a.range, *a.depth, a.objectives) << '\n';
    } else {
      if (!a.iterations || !a.eps) fail(kExitError, "prop2 needs --n and --eps");
      out << prop2_bound(a.range, *a.iterations, a.objectives, *a.eps) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    fail(kExitError, e.what());
  }
}

void run_hv(const std::string& front_path, const std::string& ref_text, std::ostream& out) {
  const auto ref = parse_point(ref_text, "--ref");
  FrontSet front;
  try {
    front = read_front_csv(front_path);
    out << format_real(hypervolume_2d(front, ref)) << '\n';
  } catch (const std::exception& e) {
    fail(kExitError, e.what());
  }
}

void run_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  const Momdp m = read_model(path);
  require_valid(m, err);
  out << "ok\n";
  print_stats(m, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-objective MDP solvers, benchmarks and table reproduction", "modp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  EnvArgs env_args;
  auto* env_cmd = app.add_subcommand("env", "Build a benchmark model and print or save it");
  env_cmd->add_option("name", env_args.name, "hansen | sdst-rd | pyramid | cyclic")
      ->required()
      ->check(CLI::IsMember({"hansen", "sdst-rd", "pyramid", "cyclic"}));
  env_cmd->add_option("--d", env_args.d, "Chain depth (hansen)");
  env_cmd->add_option("--kind", env_args.kind,
                      "hansen: standard|exponential|fractional|discounted|nondeterministic; "
                      "cyclic: stochastic-loop|continuing");
  env_cmd->add_option("--columns", env_args.columns, "Leftmost columns kept (sdst-rd)");
  env_cmd->add_option("--p", env_args.p, "Probability of the intended move");
  env_cmd->add_option("--n", env_args.n, "Grid size (pyramid)");
  env_cmd->add_option("--noise", env_args.noise, "Pyramid noise: all | others")->check(CLI::IsMember({"all", "others"}));
  env_cmd->add_option("--indexing", env_args.indexing, "Pyramid reward coordinates: 1 | 0")->check(CLI::IsMember({0, 1}));
  env_cmd->add_option("--gamma", env_args.gamma, "Discount rate stored in the model");
  env_cmd->add_option("--out", env_args.out, "Model file (stdout if omitted)");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a model file and report V(s0)");
  solve_cmd->add_option("--alg", solve_args.alg, "B | W | WLP")->required()->check(CLI::IsMember({"B", "W", "WLP"}));
  solve_cmd->add_option("--model", solve_args.model, "Model file")->required();
  auto* iters_opt = solve_cmd->add_option("--iters", solve_args.iters, "Sweeps, or 'auto' for the episode bound");
  solve_cmd->add_option("--eps", solve_args.eps, "Grid precision (WLP)");
  solve_cmd->add_option("--gamma", solve_args.gamma, "Override the model's discount rate");
  solve_cmd->add_option("--hv-ref", solve_args.hv_ref, "Hypervolume reference point a,b");
  solve_cmd->add_option("--out", solve_args.out, "Front CSV for the start state (stdout if omitted)");
  solve_cmd->add_option("--all-states", solve_args.all_states, "CSV with the front of every state");
  solve_cmd->add_option("--budget", solve_args.budget, std::string("Time budget in seconds (default $") + kBudgetVariable + ")");
  solve_cmd->add_option("--threads", solve_args.threads, "Worker threads per sweep (W, WLP)");

  ReproduceArgs repro_args;
  auto* repro_cmd = app.add_subcommand("reproduce", "Rerun the benchmark tables");
  repro_cmd->add_option("--table", repro_args.table, "1, 2 (SDST-RD) or 3, 4 (pyramid)")->required()->check(CLI::Range(1, 4));
  repro_cmd->add_option("--budget", repro_args.budget,
                        std::string("Per-cell budget in seconds (default $") + kBudgetVariable + " or 60)");
  repro_cmd->add_option("--out-dir", repro_args.out_dir, "Directory for results.csv and front CSVs");
  repro_cmd->add_option("--max-instance", repro_args.max_instance, "Largest subproblem or N to run");
  repro_cmd->add_option("--noise", repro_args.noise, "Pyramid noise: all | others")->check(CLI::IsMember({"all", "others"}));
  repro_cmd->add_option("--indexing", repro_args.indexing, "Pyramid reward coordinates: 1 | 0")->check(CLI::IsMember({0, 1}));
  repro_cmd->add_option("--threads", repro_args.threads, "Worker threads per sweep");

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Front-size bounds");
  bounds_cmd->add_option("which", bounds_args.which, "prop1 | prop2")->required()->check(CLI::IsMember({"prop1", "prop2"}));
  bounds_cmd->add_option("--R", bounds_args.range, "Reward range r_max - r_min");
  bounds_cmd->add_option("--d", bounds_args.depth, "Episode length bound (prop1)");
  bounds_cmd->add_option("--n", bounds_args.iterations, "Sweeps (prop2)");
  bounds_cmd->add_option("--q", bounds_args.objectives, "Objectives")->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--eps", bounds_args.eps, "Grid precision (prop2)");

  std::string hv_front, hv_ref;
  auto* hv_cmd = app.add_subcommand("hv", "Hypervolume of a front CSV");
  hv_cmd->add_option("--front", hv_front, "Front CSV")->required();
  hv_cmd->add_option("--ref", hv_ref, "Reference point a,b")->required();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a model file");
  validate_cmd->add_option("--model", validate_path, "Model file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << "run with --help for usage\n";
    return kExitError;
  }

  try {
    if (*env_cmd) {
      run_env(env_args, out, err);
    } else if (*solve_cmd) {
      solve_args.iters_given = iters_opt->count() > 0;
      return run_solve(solve_args, out, err);
    } else if (*repro_cmd) {
      run_reproduce(repro_args, out);
    } else if (*bounds_cmd) {
      run_bounds(bounds_args, out);
    } else if (*hv_cmd) {
      run_hv(hv_front, hv_ref, out);
    } else if (*validate_cmd) {
      run_validate(validate_path, out, err);
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const CyclicModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidModel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace modp::cli
