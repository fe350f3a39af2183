#include "nmps/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace nmps {
namespace {

std::size_t index_of(std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  names.push_back(name);
  return names.size() - 1;
}

}  // namespace

double RunRecord::best() const {
  if (failed || best_so_far.empty()) return kInf;
  return best_so_far.back().second;
}

RunRecord make_record(const ProblemSpec& problem, std::string strategy, RunResult result) {
  RunRecord rec;
  rec.problem = problem.name;
  rec.strategy = std::move(strategy);
  rec.n = problem.dim();
  rec.f0 = result.f0;
  rec.stop = result.stop;
  rec.fe = result.fe;
  rec.iterations = result.iterations;
  rec.f_final = result.f_final;
  for (const auto& event : result.trace.events) {
    const auto* e = std::get_if<EvalRecord>(&event);
    if (e == nullptr || e->cached) continue;
    if (rec.best_so_far.empty() || e->f < rec.best_so_far.back().second) {
      rec.best_so_far.emplace_back(e->fe, e->f);
    }
  }
  rec.trace = std::move(result.trace);
  return rec;
}

bool is_solved(double f0, double f, double f_low, double tau) {
  return f0 - f >= (1.0 - tau) * (f0 - f_low);
}

std::optional<std::size_t> fe_to_solve(const RunRecord& record, double f_low, double tau) {
  if (record.failed) return std::nullopt;
  for (const auto& [fe, f] : record.best_so_far) {
    if (is_solved(record.f0, f, f_low, tau)) return fe;
  }
  return std::nullopt;
}

ResultTable build_table(std::span<const RunRecord> records, double tau) {
  ResultTable table;
  table.tau = tau;
  for (const auto& rec : records) {
    index_of(table.problems, rec.problem);
    index_of(table.strategies, rec.strategy);
  }
  const std::size_t np = table.problems.size();
  const std::size_t ns = table.strategies.size();
  table.f_low.assign(np, kInf);
  table.t.assign(np, std::vector<std::optional<std::size_t>>(ns));
  for (const auto& rec : records) {
    const std::size_t p = index_of(table.problems, rec.problem);
    table.f_low[p] = std::min(table.f_low[p], rec.best());
  }
  for (const auto& rec : records) {
    const std::size_t p = index_of(table.problems, rec.problem);
    const std::size_t s = index_of(table.strategies, rec.strategy);
    if (std::isfinite(table.f_low[p])) table.t[p][s] = fe_to_solve(rec, table.f_low[p], tau);
  }
  return table;
}

RatioMatrix perf_ratios(const ResultTable& table) {
  RatioMatrix out;
  out.tau = table.tau;
  out.strategies = table.strategies;
  for (std::size_t p = 0; p < table.problems.size(); ++p) {
    std::optional<std::size_t> best;
    for (const auto& t : table.t[p]) {
      if (t && (!best || *t < *best)) best = t;
    }
    if (!best) {
      out.dropped.push_back(table.problems[p]);
      continue;
    }
    std::vector<double> row;
    for (const auto& t : table.t[p]) {
      row.push_back(t ? static_cast<double>(*t) / static_cast<double>(*best) : kInf);
    }
    out.problems.push_back(table.problems[p]);
    out.r.push_back(std::move(row));
  }
  return out;
}

std::vector<ProfileCurve> profile(const RatioMatrix& ratios, std::span<const double> alphas) {
  std::vector<ProfileCurve> curves;
  const double size = static_cast<double>(ratios.problems.size());
  for (std::size_t s = 0; s < ratios.strategies.size(); ++s) {
    ProfileCurve curve{ratios.strategies[s], ratios.tau, {}};
    for (double alpha : alphas) {
      std::size_t count = 0;
      for (const auto& row : ratios.r) count += row[s] <= alpha ? 1 : 0;
      curve.points.emplace_back(alpha, size > 0 ? static_cast<double>(count) / size : 0.0);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int j = 0; j <= 40; ++j) grid.push_back(std::exp2(j / 4.0));
  return grid;
}

std::vector<double> default_taus() { return {1e-1, 1e-3, 1e-5}; }

MatrixRun run_matrix(std::span<const ProblemSpec> problems,
                     std::span<const StrategyKind> strategies, const SolverConfig& config,
                     std::span<const double> taus, std::size_t threads) {
  const std::size_t total = problems.size() * strategies.size();
  MatrixRun out;
  out.records.resize(total);

  const auto run_one = [&](std::size_t index) {
    const ProblemSpec& problem = problems[index / strategies.size()];
    const StrategyKind kind = strategies[index % strategies.size()];
    SolverConfig cfg = config;
    cfg.strategy.kind = kind;
    const std::string token(strategy_token(kind));
    try {
      out.records[index] = make_record(problem, token, solve(problem, cfg));
    } catch (const std::exception& e) {
      RunRecord failed;
      failed.problem = problem.name;
      failed.strategy = token;
      failed.n = problem.dim();
      failed.failed = true;
      failed.error = e.what();
      failed.f0 = std::numeric_limits<double>::quiet_NaN();
      failed.f_final = std::numeric_limits<double>::quiet_NaN();
      out.records[index] = std::move(failed);
    }
  };

  if (threads == 0) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < std::min(threads, total); ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) run_one(i);
      });
    }
  }

  for (double tau : taus) out.tables.push_back(build_table(out.records, tau));
  return out;
}

}  // namespace nmps
