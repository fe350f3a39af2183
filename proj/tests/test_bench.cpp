#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "nmps/bench.hpp"
#include "nmps/errors.hpp"

namespace nmps {
namespace {

const std::vector<StrategyKind> kAll = {StrategyKind::MaxMemory, StrategyKind::CLine,
                                        StrategyKind::Lambda, StrategyKind::Armijo};

RunRecord record(std::string problem, std::string strategy, double f0,
                 std::vector<std::pair<std::size_t, double>> best) {
  RunRecord r;
  r.problem = std::move(problem);
  r.strategy = std::move(strategy);
  r.n = 2;
  r.f0 = f0;
  r.best_so_far = std::move(best);
  r.fe = r.best_so_far.back().first;
  r.f_final = r.best_so_far.back().second;
  return r;
}

ResultTable table_of(std::vector<std::vector<std::optional<std::size_t>>> t) {
  ResultTable table;
  table.tau = 0.1;
  for (std::size_t p = 0; p < t.size(); ++p) table.problems.push_back("p" + std::to_string(p));
  for (std::size_t s = 0; s < t.front().size(); ++s) {
    table.strategies.push_back("s" + std::to_string(s));
  }
  table.f_low.assign(t.size(), 0.0);
  table.t = std::move(t);
  return table;
}

std::vector<ProblemSpec> registry_problems() {
  std::vector<ProblemSpec> out;
  for (const auto& name : registry_names()) out.push_back(registry_get(name));
  return out;
}

const MatrixRun& full_matrix() {
  static const MatrixRun run =
      run_matrix(registry_problems(), kAll, SolverConfig{}, default_taus(), 0);
  return run;
}

std::string csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  write_results_csv(out, records);
  write_history_csv(out, records);
  return out.str();
}

TEST(IsSolved, Examples) {
  EXPECT_TRUE(is_solved(10.0, 1.0, 1.0, 0.1));
  EXPECT_FALSE(is_solved(10.0, 10.0, 1.0, 0.1));
  EXPECT_TRUE(is_solved(10.0, 10.0, 1.0, 1.0));
  EXPECT_FALSE(is_solved(10.0, 10.5, 1.0, 1.0));
  // f0 = f_L degenerates to f <= f0.
  EXPECT_TRUE(is_solved(3.0, 3.0, 3.0, 1e-5));
}

TEST(IsSolved, InclusiveBoundary) {
  // f0 - f = 1 - tau exactly: f0 = 1, f_L = 0, tau = 0.5, f = 0.5.
  EXPECT_TRUE(is_solved(1.0, 0.5, 0.0, 0.5));
}

TEST(FeToSolve, FirstCrossing) {
  const RunRecord r = record("p", "s", 10.0, {{1, 10.0}, {5, 4.0}, {64, 1.0}, {90, 0.5}});
  EXPECT_EQ(fe_to_solve(r, 1.0, 0.1), 64u);
  EXPECT_EQ(fe_to_solve(r, 0.5, 0.01), 90u);  // needs f <= 0.595
  EXPECT_FALSE(fe_to_solve(r, -5.0, 0.1).has_value());
  EXPECT_EQ(fe_to_solve(record("p", "s", 2.0, {{1, 2.0}}), 2.0, 0.1), 1u);
}

TEST(FeToSolve, FailedRunNeverSolves) {
  RunRecord r = record("p", "s", 1.0, {{1, 1.0}});
  r.failed = true;
  EXPECT_FALSE(fe_to_solve(r, 1.0, 1.0).has_value());
  EXPECT_EQ(r.best(), kInf);
}

TEST(PerfRatios, Examples) {
  const auto m = perf_ratios(table_of({{10, 20}, {7, 7}, {5, std::nullopt}}));
  ASSERT_EQ(m.r.size(), 3u);
  EXPECT_EQ(m.r[0], (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(m.r[1], (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(m.r[2][0], 1.0);
  EXPECT_EQ(m.r[2][1], kInf);
  EXPECT_TRUE(m.dropped.empty());
}

TEST(PerfRatios, DropsProblemsNobodySolved) {
  const auto m = perf_ratios(table_of({{std::nullopt, std::nullopt}, {3, 6}}));
  EXPECT_EQ(m.problems, (std::vector<std::string>{"p1"}));
  EXPECT_EQ(m.dropped, (std::vector<std::string>{"p0"}));
}

TEST(Profile, Examples) {
  const auto alphas = default_alpha_grid();
  const auto one = profile(perf_ratios(table_of({{4}, {9}})), alphas);
  ASSERT_EQ(one.size(), 1u);
  for (const auto& [alpha, rho] : one[0].points) EXPECT_EQ(rho, 1.0);

  const auto two = profile(perf_ratios(table_of({{10, 20}, {7, 7}, {5, std::nullopt}})), alphas);
  EXPECT_EQ(two[0].points.front().second, 1.0);
  EXPECT_DOUBLE_EQ(two[1].points.front().second, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(two[1].points.back().second, 2.0 / 3.0);
  // alpha = 2 is on the grid (j = 4); the step is right-continuous there.
  EXPECT_EQ(alphas[4], 2.0);
  EXPECT_DOUBLE_EQ(two[1].points[4].second, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(two[1].points[3].second, 1.0 / 3.0);
}

TEST(Profile, DefaultGrids) {
  const auto alphas = default_alpha_grid();
  ASSERT_EQ(alphas.size(), 41u);
  EXPECT_EQ(alphas.front(), 1.0);
  EXPECT_EQ(alphas.back(), 1024.0);
  EXPECT_EQ(default_taus(), (std::vector<double>{1e-1, 1e-3, 1e-5}));
}

TEST(RunMatrix, Cardinality) {
  EXPECT_EQ(full_matrix().records.size(), 36u);
  EXPECT_EQ(full_matrix().tables.size(), 3u);
  EXPECT_EQ(full_matrix().records[1].problem, "hs1");
  EXPECT_EQ(full_matrix().records[1].strategy, "cline");
}

TEST(RunMatrix, SingleStrategyHasUnitRatios) {
  const std::vector<StrategyKind> one = {StrategyKind::Lambda};
  const auto run = run_matrix(registry_problems(), one, SolverConfig{}, default_taus(), 0);
  for (const auto& table : run.tables) {
    for (const auto& row : perf_ratios(table).r) EXPECT_EQ(row[0], 1.0);
  }
}

TEST(RunMatrix, ParallelOutputMatchesSequential) {
  const auto parallel = run_matrix(registry_problems(), kAll, SolverConfig{}, default_taus(), 3);
  EXPECT_EQ(csv(parallel.records), csv(full_matrix().records));
  for (std::size_t i = 0; i < parallel.records.size(); ++i) {
    EXPECT_TRUE(parallel.records[i].trace == full_matrix().records[i].trace) << i;
  }
}

TEST(RunMatrix, FailedRunIsRecorded) {
  std::vector<ProblemSpec> problems = {registry_get("hs4")};
  ProblemSpec broken = registry_get("sphere2");
  broken.name = "broken";
  broken.objective = [](std::span<const double>) { return std::nan(""); };
  problems.push_back(broken);
  const auto run = run_matrix(problems, kAll, SolverConfig{}, default_taus(), 2);
  ASSERT_EQ(run.records.size(), 8u);
  for (std::size_t i = 4; i < 8; ++i) {
    EXPECT_TRUE(run.records[i].failed);
    EXPECT_FALSE(run.records[i].error.empty());
  }
  const auto ratios = perf_ratios(run.tables[0]);
  EXPECT_EQ(ratios.dropped, (std::vector<std::string>{"broken"}));
  std::ostringstream out;
  write_results_csv(out, run.records);
  EXPECT_NE(out.str().find("broken,nmps,2,0,0,error,"), std::string::npos);
}

TEST(Records, BestSoFarIsNonincreasingAndStartsAtF0) {
  for (const auto& r : full_matrix().records) {
    ASSERT_FALSE(r.best_so_far.empty());
    EXPECT_EQ(r.best_so_far.front(), (std::pair<std::size_t, double>{1, r.f0}));
    for (std::size_t i = 1; i < r.best_so_far.size(); ++i) {
      EXPECT_GT(r.best_so_far[i].first, r.best_so_far[i - 1].first);
      EXPECT_LT(r.best_so_far[i].second, r.best_so_far[i - 1].second);
    }
    EXPECT_LE(r.best(), r.f_final);
    EXPECT_LE(r.best_so_far.back().first, r.fe);
  }
}

TEST(Tables, LowestValueIsMinimumOverStrategies) {
  const auto& run = full_matrix();
  const auto& table = run.tables[0];
  for (std::size_t p = 0; p < table.problems.size(); ++p) {
    double low = kInf;
    for (const auto& r : run.records) {
      if (r.problem == table.problems[p]) low = std::min(low, r.best());
    }
    EXPECT_EQ(table.f_low[p], low);
  }
}

TEST(Tables, FeToSolveMonotoneInTau) {
  const auto& run = full_matrix();
  for (const auto& r : run.records) {
    const std::size_t p = static_cast<std::size_t>(
        std::find(run.tables[0].problems.begin(), run.tables[0].problems.end(), r.problem) -
        run.tables[0].problems.begin());
    const double low = run.tables[0].f_low[p];
    std::optional<std::size_t> previous = fe_to_solve(r, low, 1.0);
    for (double tau : {0.5, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-7, 0.0}) {
      const auto t = fe_to_solve(r, low, tau);
      if (!previous) {
        EXPECT_FALSE(t.has_value());
      } else if (t) {
        EXPECT_GE(*t, *previous);
      }
      previous = t;
    }
  }
}

TEST(Profiles, CurvePropertiesOnMatrix) {
  const auto alphas = default_alpha_grid();
  for (const auto& table : full_matrix().tables) {
    const auto ratios = perf_ratios(table);
    ASSERT_FALSE(ratios.problems.empty());
    for (const auto& row : ratios.r) {
      EXPECT_EQ(*std::min_element(row.begin(), row.end()), 1.0);
    }
    for (std::size_t s = 0; s < ratios.strategies.size(); ++s) {
      const auto curve = profile(ratios, alphas)[s];
      std::size_t solved = 0;
      for (const auto& row : ratios.r) solved += std::isfinite(row[s]) ? 1 : 0;
      double previous = 0.0;
      for (const auto& [alpha, rho] : curve.points) {
        EXPECT_GE(rho, previous);
        EXPECT_GE(rho, 0.0);
        EXPECT_LE(rho, static_cast<double>(solved) / static_cast<double>(ratios.problems.size()));
        previous = rho;
      }
    }
  }
}

TEST(Profiles, StricterTauSolvesNoMoreProblems) {
  const auto& tables = full_matrix().tables;
  for (std::size_t i = 1; i < tables.size(); ++i) {
    for (std::size_t p = 0; p < tables[i].problems.size(); ++p) {
      for (std::size_t s = 0; s < tables[i].strategies.size(); ++s) {
        if (tables[i].t[p][s]) {
          EXPECT_TRUE(tables[i - 1].t[p][s].has_value());
        }
      }
    }
  }
}

// Not true for every data set (a stricter tau can move a problem's best
// count and lower a ratio), so this checks the registry matrix only.
TEST(Profiles, StricterTauNeverRaisesRhoOnRegistryMatrix) {
  const auto& tables = full_matrix().tables;
  std::vector<std::vector<ProfileCurve>> families;
  for (const auto& table : tables) {
    families.push_back(profile(perf_ratios(table), default_alpha_grid()));
  }
  for (std::size_t i = 1; i < families.size(); ++i) {
    for (std::size_t s = 0; s < families[i].size(); ++s) {
      for (std::size_t a = 0; a < families[i][s].points.size(); ++a) {
        EXPECT_LE(families[i][s].points[a].second, families[i - 1][s].points[a].second);
      }
    }
  }
}

TEST(Csv, Headers) {
  const std::vector<RunRecord> none;
  const std::vector<ProfileCurve> no_curves;
  std::ostringstream results, history, prof;
  write_results_csv(results, none);
  write_history_csv(history, none);
  write_profile_csv(prof, no_curves);
  EXPECT_EQ(results.str(), "problem,strategy,n,fe,iters,stop,f0,f_final\n");
  EXPECT_EQ(history.str(), "problem,strategy,fe,best_f\n");
  EXPECT_EQ(prof.str(), "strategy,tau,alpha,rho\n");
}

TEST(Csv, RoundTripReproducesProfiles) {
  const auto& run = full_matrix();
  std::ostringstream results, history;
  write_results_csv(results, run.records);
  write_history_csv(history, run.records);
  std::istringstream rin(results.str()), hin(history.str());
  const auto loaded = read_records(rin, hin);
  ASSERT_EQ(loaded.size(), run.records.size());
  EXPECT_EQ(csv(loaded), csv(run.records));
  const auto alphas = default_alpha_grid();
  for (double tau : default_taus()) {
    const auto a = profile(perf_ratios(build_table(run.records, tau)), alphas);
    const auto b = profile(perf_ratios(build_table(loaded, tau)), alphas);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t s = 0; s < a.size(); ++s) EXPECT_EQ(a[s].points, b[s].points);
  }
}

TEST(Csv, MalformedInputRaisesIoError) {
  std::istringstream bad_header("x,y\n"), empty_history("problem,strategy,fe,best_f\n");
  EXPECT_THROW(read_records(bad_header, empty_history), IoError);
  std::istringstream bad_row("problem,strategy,n,fe,iters,stop,f0,f_final\nhs1,nmps,2,abc,1,TOL,1,1\n");
  std::istringstream h2("problem,strategy,fe,best_f\n");
  EXPECT_THROW(read_records(bad_row, h2), IoError);
  std::istringstream ok("problem,strategy,n,fe,iters,stop,f0,f_final\nhs1,nmps,2,3,1,TOL,1,1\n");
  std::istringstream orphan("problem,strategy,fe,best_f\nhs9,nmps,1,1\n");
  EXPECT_THROW(read_records(ok, orphan), IoError);
}

TEST(Csv, HistoryPath) {
  EXPECT_EQ(history_path_for("r.csv"), "r.history.csv");
  EXPECT_EQ(history_path_for("out/results"), "out/results.history.csv");
}

TEST(Files, ErrorsNameThePath) {
  const std::string path = "/nonexistent-dir/x.csv";
  try {
    save_text(path, "x");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
  EXPECT_THROW(load_text(path), IoError);
}

TEST(Files, SaveLoadRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "nmps_bench_io.txt").string();
  save_text(path, "a,b\n1,2\n");
  EXPECT_EQ(load_text(path), "a,b\n1,2\n");
  std::filesystem::remove(path);
}

TEST(Svg, PanelsLegendAndLabels) {
  std::vector<ProfileCurve> curves;
  for (const auto& table : full_matrix().tables) {
    const auto family = profile(perf_ratios(table), default_alpha_grid());
    curves.insert(curves.end(), family.begin(), family.end());
  }
  std::ostringstream out;
  write_profile_svg(out, curves);
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("alpha (log2)"), std::string::npos);
  EXPECT_NE(svg.find(">rho<"), std::string::npos);
  std::size_t polylines = 0;
  for (auto at = svg.find("<polyline"); at != std::string::npos; at = svg.find("<polyline", at + 1)) {
    ++polylines;
  }
  EXPECT_EQ(polylines, 12u);
  for (const char* name : {"nmps", "cline", "lambda", "armijo"}) {
    EXPECT_NE(svg.find(name), std::string::npos);
  }
}

}  // namespace
}  // namespace nmps
