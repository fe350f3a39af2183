#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "nmps/bench.hpp"
#include "nmps/errors.hpp"
#include "nmps/format.hpp"
#include "nmps/problem.hpp"
#include "nmps/stationarity.hpp"
#include "nmps/trace.hpp"

namespace nmps::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> parse_taus(const std::string& text) {
  std::vector<double> taus;
  for (const auto& item : split_list(text)) {
    char* end = nullptr;
    const double tau = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0' || !(tau > 0.0 && tau < 1.0)) {
      throw UsageError("--tau: expected values in (0, 1), got '" + item + "'");
    }
    taus.push_back(tau);
  }
  if (taus.empty()) throw UsageError("--tau: empty list");
  return taus;
}

std::vector<StrategyKind> parse_strategies(const std::string& text) {
  std::vector<StrategyKind> kinds;
  for (const auto& item : split_list(text)) {
    try {
      kinds.push_back(strategy_from_token(item));
    } catch (const UsageError& e) {
      throw UsageError(std::string("--strategies: ") + e.what());
    }
  }
  if (kinds.empty()) throw UsageError("--strategies: empty list");
  return kinds;
}

// Options shared by solve and bench.
struct SolverFlags {
  double delta0 = 1.0;
  double tol = 1e-6;
  std::size_t max_fe = 2500;
  std::size_t max_it = 5000;
  std::size_t memory = 15;
  double eta_base = 1.1;
  double r = 0.85;
  std::size_t cache = 100000;
  std::string lambda_rule = "uniform";
};

const CLI::Validator kAboveOne(
    [](const std::string& s) -> std::string {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0' || !(v > 1.0) || !std::isfinite(v)) {
        return "value must be a finite number > 1";
      }
      return {};
    },
    "NUMBER>1");

void add_solver_flags(CLI::App& app, SolverFlags& f) {
  app.add_option("--delta0", f.delta0, "initial step length")
      ->default_str("1.0")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", f.tol, "stop once the step length drops below this")
      ->default_str("1e-6")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-fe", f.max_fe, "function evaluation budget")
      ->default_str("2500")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-it", f.max_it, "iteration budget")
      ->default_str("5000")
      ->check(CLI::PositiveNumber);
  app.add_option("--memory", f.memory, "memory size M (nmps, lambda)")
      ->default_str("15")
      ->check(CLI::PositiveNumber);
  app.add_option("--eta-base", f.eta_base, "forcing term eta_k = base^-k")
      ->default_str("1.1")
      ->check(kAboveOne);
  app.add_option("--r", f.r, "cline weight r_k")->default_str("0.85")->check(CLI::Range(0.0, 1.0));
  app.add_option("--lambda-rule", f.lambda_rule, "lambda weights")
      ->default_str("uniform")
      ->check(CLI::IsMember({"uniform"}));
  app.add_option("--cache", f.cache, "evaluation cache capacity, 0 disables")
      ->default_str("100000");
}

SolverConfig to_solver(const SolverFlags& f, StrategyKind kind) {
  if (!(f.tol < f.delta0)) throw UsageError("--tol must be smaller than --delta0");
  SolverConfig config;
  config.delta0 = f.delta0;
  config.delta_tol = f.tol;
  config.max_fe = f.max_fe;
  config.max_it = f.max_it;
  config.strategy.kind = kind;
  config.strategy.memory = f.memory;
  config.strategy.r = f.r;
  config.eta_base = f.eta_base;
  config.cache_capacity = f.cache;
  config.validate();
  return config;
}

// Splits out every `--config FILE` / `--config=FILE` and returns the
// remaining arguments plus the config paths in order.
std::vector<std::string> extract_config(std::span<const std::string> args,
                                        std::vector<std::string>& paths) {
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config: missing file name");
      paths.push_back(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      paths.push_back(args[i].substr(9));
    } else {
      rest.push_back(args[i]);
    }
  }
  return rest;
}

std::vector<std::string> config_args(const std::string& path, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "config" || sub.get_option_no_throw("--" + key) == nullptr) {
      throw UsageError(path + ": unknown key '" + key + "' for " + sub.get_name());
    }
    out.push_back("--" + key);
    out.push_back(value);
  }
  return out;
}

std::string join_x(const Vector& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + format_real(x[i]);
  return s + ")";
}

std::vector<ProblemSpec> load_problems(const std::vector<std::string>& names) {
  std::vector<ProblemSpec> problems;
  for (const auto& name : names) problems.push_back(registry_get(name));
  return problems;
}

std::string render(const auto& write, const auto& data) {
  std::ostringstream out;
  write(out, data);
  return out.str();
}

void write_profile_outputs(const CliConfig& config, std::span<const RunRecord> records,
                           std::ostream& out) {
  std::vector<ProfileCurve> curves;
  std::vector<RatioMatrix> ratios;
  const auto alphas = default_alpha_grid();
  for (double tau : config.taus) {
    ratios.push_back(perf_ratios(build_table(records, tau)));
    const auto family = profile(ratios.back(), alphas);
    curves.insert(curves.end(), family.begin(), family.end());
  }
  const std::vector<ProfileCurve>& c = curves;
  const std::vector<RatioMatrix>& rm = ratios;
  if (config.command == Command::Profile && config.out_path.empty()) {
    write_profile_csv(out, c);
  }
  const std::string profile_path =
      config.command == Command::Profile ? config.out_path : config.profile_out.value_or("");
  if (!profile_path.empty()) save_text(profile_path, render(write_profile_csv, std::span(c)));
  if (config.svg_path) save_text(*config.svg_path, render(write_profile_svg, std::span(c)));
  if (config.unsolved_out) {
    save_text(*config.unsolved_out, render(write_unsolved_csv, std::span(rm)));
  }
  for (const auto& m : ratios) {
    for (const auto& p : m.dropped) {
      out << "unsolved at tau=" << format_real(m.tau) << ": " << p << '\n';
    }
  }
}

int do_solve(const CliConfig& config, std::ostream& out) {
  const ProblemSpec problem = registry_get(config.problem);
  const RunResult result = solve(problem, config.solver);
  out << "problem=" << problem.name << " strategy=" << strategy_token(config.solver.strategy.kind)
      << " stop=" << stop_label(result.stop) << " fe=" << result.fe
      << " iterations=" << result.iterations << " f_final=" << format_real(result.f_final)
      << " x_final=" << join_x(result.x_final) << '\n';
  if (config.trace_path) {
    std::ostringstream trace;
    write_trace_csv(trace, result.trace);
    save_text(*config.trace_path, trace.str());
  }
  if (config.chi_report_path) {
    const auto rows = chi_report(problem, result.trace, config.lipschitz, config.grad_bound);
    std::ostringstream report;
    write_chi_report_csv(report, problem.name, rows);
    save_text(*config.chi_report_path, report.str());
  }
  return 0;
}

int do_bench(const CliConfig& config, std::ostream& out) {
  const auto problems = load_problems(config.problems);
  const MatrixRun run =
      run_matrix(problems, config.strategies, config.solver, config.taus, threads_from_env());
  const std::vector<RunRecord>& records = run.records;
  save_text(config.out_path, render(write_results_csv, std::span(records)));
  save_text(history_path_for(config.out_path), render(write_history_csv, std::span(records)));
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.failed) {
      ++failed;
      out << "failed: " << r.problem << ' ' << r.strategy << ": " << r.error << '\n';
    }
  }
  out << "wrote " << records.size() << " runs to " << config.out_path << '\n';
  if (config.profile_out || config.svg_path || config.unsolved_out) {
    write_profile_outputs(config, records, out);
  }
  return failed == 0 ? 0 : 2;
}

int do_profile(const CliConfig& config, std::ostream& out) {
  std::istringstream results(load_text(config.in_path));
  std::istringstream history(load_text(history_path_for(config.in_path)));
  const auto records = read_records(results, history);
  write_profile_outputs(config, records, out);
  return 0;
}

}  // namespace

std::size_t threads_from_env() {
  const char* value = std::getenv("NMPS_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(value, &end, 10);
  if (*end != '\0' || n < 0) throw UsageError("NMPS_THREADS must be a non-negative integer");
  return static_cast<std::size_t>(n);
}

CliConfig parse_args(std::span<const std::string> args) {
  CliConfig config;
  SolverFlags flags;
  std::string strategy = "nmps";
  std::string problems;
  std::string strategies = "nmps,cline,lambda,armijo";
  std::string taus = "1e-1,1e-3,1e-5";

  CLI::App app{"Nonmonotone pattern search for bound-constrained problems", "nmps"};
  app.footer(
      "Solver defaults: --delta0 1.0 --tol 1e-6 --max-fe 2500 --max-it 5000 --memory 15 "
      "--eta-base 1.1 --r 0.85\nConfig files: --config FILE with key=value lines, "
      "overridden by flags.");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* list = app.add_subcommand("list", "print the problem registry");

  CLI::App* solve_cmd = app.add_subcommand("solve", "run one problem with one strategy");
  solve_cmd->add_option("--problem", config.problem, "registry name")->required();
  solve_cmd->add_option("--strategy", strategy, "nmps, cline, lambda or armijo")
      ->default_str("nmps");
  add_solver_flags(*solve_cmd, flags);
  solve_cmd->add_option("--trace", config.trace_path, "write the evaluation trace CSV");
  solve_cmd->add_option("--chi-report", config.chi_report_path,
                        "write chi at every iterate next to the stationarity bound");
  solve_cmd->add_option("--lipschitz", config.lipschitz, "gradient Lipschitz constant L")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--grad-bound", config.grad_bound, "gradient norm bound gamma")
      ->check(CLI::PositiveNumber);

  CLI::App* bench = app.add_subcommand("bench", "run a problem x strategy matrix");
  bench->add_option("--problems", problems, "comma-separated names")
      ->default_str("hs1,hs2,hs3,hs4,hs5,hs25,hs38,hs45,hs110");
  bench->add_option("--strategies", strategies, "comma-separated tokens")
      ->default_str("nmps,cline,lambda,armijo");
  bench->add_option("--out", config.out_path, "results CSV; history goes to <stem>.history.csv")
      ->required();
  bench->add_option("--tau", taus, "comma-separated tolerances")->default_str("1e-1,1e-3,1e-5");
  bench->add_option("--profile-out", config.profile_out, "write profile CSV");
  bench->add_option("--svg", config.svg_path, "write profile SVG");
  bench->add_option("--unsolved", config.unsolved_out, "write problems nobody solved");
  add_solver_flags(*bench, flags);

  CLI::App* profile_cmd = app.add_subcommand("profile", "performance profiles from bench output");
  profile_cmd->add_option("--in", config.in_path, "results CSV written by bench")->required();
  profile_cmd->add_option("--tau", taus, "comma-separated tolerances")
      ->default_str("1e-1,1e-3,1e-5");
  profile_cmd->add_option("--out", config.out_path, "profile CSV (default: stdout)");
  profile_cmd->add_option("--svg", config.svg_path, "write profile SVG");
  profile_cmd->add_option("--unsolved", config.unsolved_out, "write problems nobody solved");

  std::vector<std::string> config_paths;
  std::vector<std::string> argv = extract_config(args, config_paths);
  if (!config_paths.empty()) {
    const auto sub_it = std::find_if(argv.begin(), argv.end(),
                                     [](const std::string& a) { return a.rfind('-', 0) != 0; });
    CLI::App* sub = sub_it == argv.end() ? nullptr : app.get_subcommand_no_throw(*sub_it);
    if (sub == nullptr) throw UsageError("--config needs a subcommand");
    std::vector<std::string> extra;
    for (const auto& path : config_paths) {
      const auto more = config_args(path, *sub);
      extra.insert(extra.end(), more.begin(), more.end());
    }
    argv.insert(sub_it + 1, extra.begin(), extra.end());
  }

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    throw HelpRequested(parsed.empty() ? app.help() : parsed.front()->help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (list->parsed()) {
    config.command = Command::List;
  } else if (solve_cmd->parsed()) {
    config.command = Command::Solve;
    StrategyKind kind;
    try {
      kind = strategy_from_token(strategy);
    } catch (const UsageError& e) {
      throw UsageError(std::string("--strategy: ") + e.what());
    }
    config.solver = to_solver(flags, kind);
    if (config.chi_report_path && !(config.lipschitz > 0.0 && config.grad_bound > 0.0)) {
      throw UsageError("--chi-report requires --lipschitz and --grad-bound");
    }
    static_cast<void>(registry_get(config.problem));
  } else if (bench->parsed()) {
    config.command = Command::Bench;
    config.strategies = parse_strategies(strategies);
    config.solver = to_solver(flags, config.strategies.front());
    config.problems = problems.empty() ? registry_names() : split_list(problems);
    if (config.problems.empty()) throw UsageError("--problems: empty list");
    for (const auto& p : config.problems) static_cast<void>(registry_get(p));
    config.taus = parse_taus(taus);
  } else {
    config.command = Command::Profile;
    config.taus = parse_taus(taus);
  }
  config.lambda_rule = flags.lambda_rule;
  return config;
}

int dispatch(const CliConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::List: out << registry_listing(); return 0;
    case Command::Solve: return do_solve(config, out);
    case Command::Bench: return do_bench(config, out);
    case Command::Profile: return do_profile(config, out);
  }
  return 4;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse_args(args), out);
  } catch (const HelpRequested& help) {
    out << help.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const ProblemError& e) {
    err << "problem error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace nmps::cli
