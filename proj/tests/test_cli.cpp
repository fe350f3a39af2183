#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nmps/bench.hpp"
#include "nmps/errors.hpp"

namespace nmps::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nmps_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    unsetenv("NMPS_THREADS");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST(ParseArgs, SolveFillsDefaults) {
  const std::vector<std::string> args = {"solve", "--problem", "hs45", "--strategy", "nmps"};
  const CliConfig c = parse_args(args);
  EXPECT_EQ(c.command, Command::Solve);
  EXPECT_EQ(c.problem, "hs45");
  const SolverConfig d;
  EXPECT_EQ(c.solver.delta0, d.delta0);
  EXPECT_EQ(c.solver.delta_tol, d.delta_tol);
  EXPECT_EQ(c.solver.max_fe, d.max_fe);
  EXPECT_EQ(c.solver.max_it, d.max_it);
  EXPECT_EQ(c.solver.strategy.memory, 15u);
  EXPECT_EQ(c.solver.strategy.r, 0.85);
  EXPECT_EQ(c.solver.eta_base, 1.1);
  EXPECT_EQ(c.solver.strategy.kind, StrategyKind::MaxMemory);
  EXPECT_EQ(c.lambda_rule, "uniform");
}

TEST(ParseArgs, Overrides) {
  const std::vector<std::string> args = {"solve",  "--problem", "hs1",  "--strategy", "cline",
                                         "--tol",  "1e-4",      "--r",  "0.5",        "--max-fe",
                                         "100",    "--memory",  "3",    "--eta-base", "2",
                                         "--delta0", "0.5",     "--cache", "0"};
  const CliConfig c = parse_args(args);
  EXPECT_EQ(c.solver.strategy.kind, StrategyKind::CLine);
  EXPECT_EQ(c.solver.delta_tol, 1e-4);
  EXPECT_EQ(c.solver.strategy.r, 0.5);
  EXPECT_EQ(c.solver.max_fe, 100u);
  EXPECT_EQ(c.solver.strategy.memory, 3u);
  EXPECT_EQ(c.solver.eta_base, 2.0);
  EXPECT_EQ(c.solver.delta0, 0.5);
  EXPECT_EQ(c.solver.cache_capacity, 0u);
}

TEST(ParseArgs, BenchDefaultsAndLists) {
  const std::vector<std::string> args = {"bench", "--strategies", "nmps,cline,lambda,armijo",
                                         "--out", "r.csv"};
  const CliConfig c = parse_args(args);
  EXPECT_EQ(c.command, Command::Bench);
  EXPECT_EQ(c.strategies.size(), 4u);
  EXPECT_EQ(c.problems, registry_names());
  EXPECT_EQ(c.taus, default_taus());
  EXPECT_EQ(c.out_path, "r.csv");
}

TEST(ParseArgs, ProfileTaus) {
  const std::vector<std::string> args = {"profile", "--in", "r.csv", "--tau", "1e-1,1e-3,1e-5",
                                         "--svg", "p.svg"};
  const CliConfig c = parse_args(args);
  EXPECT_EQ(c.command, Command::Profile);
  EXPECT_EQ(c.taus, (std::vector<double>{1e-1, 1e-3, 1e-5}));
  EXPECT_EQ(c.svg_path, "p.svg");
}

TEST(ParseArgs, LastFlagWins) {
  const std::vector<std::string> args = {"solve", "--problem", "hs1", "--max-fe", "10",
                                         "--max-fe", "20"};
  EXPECT_EQ(parse_args(args).solver.max_fe, 20u);
}

TEST(ParseArgs, UnknownTokensRejectedBeforeRunning) {
  const std::vector<std::string> bad_strategy = {"bench", "--strategies", "nmps,foo", "--out",
                                                 "r.csv"};
  EXPECT_THROW(parse_args(bad_strategy), UsageError);
  const std::vector<std::string> bad_problem = {"bench", "--problems", "hs1,nope", "--out",
                                                "r.csv"};
  EXPECT_THROW(parse_args(bad_problem), ProblemError);
  const std::vector<std::string> bad_rule = {"solve", "--problem", "hs1", "--lambda-rule", "x"};
  EXPECT_THROW(parse_args(bad_rule), UsageError);
}

TEST(Run, InvalidValuesNameTheFlag) {
  const std::pair<std::vector<std::string>, std::string> cases[] = {
      {{"solve", "--problem", "hs1", "--max-fe", "abc"}, "--max-fe"},
      {{"solve", "--problem", "hs1", "--max-fe", "0"}, "--max-fe"},
      {{"solve", "--problem", "hs1", "--r", "1.5"}, "--r"},
      {{"solve", "--problem", "hs1", "--eta-base", "1"}, "--eta-base"},
      {{"solve", "--problem", "hs1", "--tol", "-1"}, "--tol"},
      {{"solve", "--problem", "hs1", "--tol", "2"}, "--tol"},
      {{"solve", "--problem", "hs1", "--strategy", "fast"}, "--strategy"},
      {{"solve", "--problem", "hs1", "--bogus", "1"}, "--bogus"},
      {{"bench", "--out", "r.csv", "--tau", "0"}, "--tau"},
      {{"solve"}, "--problem"},
  };
  for (const auto& [args, flag] : cases) {
    const Outcome o = invoke(args);
    EXPECT_EQ(o.code, 1) << flag;
    EXPECT_NE(o.err.find(flag), std::string::npos) << o.err;
  }
}

TEST(Run, HelpListsDefaults) {
  const Outcome o = invoke({"solve", "--help"});
  EXPECT_EQ(o.code, 0);
  for (const char* value : {"[1.0]", "[1e-6]", "[2500]", "[5000]", "[15]", "[1.1]", "[0.85]"}) {
    EXPECT_NE(o.out.find(value), std::string::npos) << value;
  }
  const Outcome top = invoke({"--help"});
  EXPECT_EQ(top.code, 0);
  EXPECT_NE(top.out.find("--tol 1e-6"), std::string::npos);
  EXPECT_NE(top.out.find("--max-fe 2500"), std::string::npos);
}

TEST(Run, HelpDefaultsParseToConfigDefaults) {
  const std::vector<std::string> args = {"solve", "--problem", "hs1", "--delta0", "1.0", "--tol",
                                         "1e-6", "--max-fe", "2500", "--max-it", "5000",
                                         "--memory", "15", "--eta-base", "1.1", "--r", "0.85"};
  const CliConfig c = parse_args(args);
  const std::vector<std::string> bare = {"solve", "--problem", "hs1"};
  const CliConfig d = parse_args(bare);
  EXPECT_EQ(c.solver.delta0, d.solver.delta0);
  EXPECT_EQ(c.solver.delta_tol, d.solver.delta_tol);
  EXPECT_EQ(c.solver.eta_base, d.solver.eta_base);
  EXPECT_EQ(c.solver.strategy.r, d.solver.strategy.r);
}

TEST(Run, ListPrintsRegistry) {
  const Outcome o = invoke({"list"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, registry_listing());
  EXPECT_EQ(count_lines(o.out), 10u);
}

TEST(Run, SolvePrintsSummary) {
  const Outcome o = invoke({"solve", "--problem", "hs45", "--strategy", "nmps"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("stop=TOL"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("fe="), std::string::npos);
  EXPECT_NE(o.out.find("f_final=1"), std::string::npos);
}

TEST(Run, UnknownProblemExitsTwo) {
  const Outcome o = invoke({"solve", "--problem", "hs999"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("hs999"), std::string::npos);
}

TEST_F(CliFiles, SolveWritesTrace) {
  const Outcome o =
      invoke({"solve", "--problem", "hs3", "--strategy", "armijo", "--trace", path("t.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  std::ifstream in(path("t.csv"));
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "event,k,delta,dir,f,accepted");
  EXPECT_EQ(first.rfind("eval,0,1,0,", 0), 0u);
}

TEST_F(CliFiles, SolveWritesChiReport) {
  const Outcome o = invoke({"solve", "--problem", "hs4", "--chi-report", path("chi.csv"),
                            "--lipschitz", "10", "--grad-bound", "20"});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string text = load_text(path("chi.csv"));
  EXPECT_EQ(text.rfind("problem,x,chi,delta,bound_rhs\nhs4,", 0), 0u);
  EXPECT_EQ(invoke({"solve", "--problem", "hs4", "--chi-report", path("c.csv")}).code, 1);
}

TEST_F(CliFiles, IoErrorsExitThree) {
  EXPECT_EQ(invoke({"bench", "--problems", "hs4", "--out", "/nonexistent-dir/r.csv"}).code, 3);
  const Outcome o = invoke({"profile", "--in", path("missing.csv")});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("missing.csv"), std::string::npos);
}

TEST_F(CliFiles, BenchThenProfileMatchesInProcessPipeline) {
  const Outcome bench = invoke({"bench", "--strategies", "nmps,cline,lambda,armijo", "--out",
                                path("r.csv"), "--profile-out", path("bench_profile.csv")});
  ASSERT_EQ(bench.code, 0) << bench.err;
  EXPECT_EQ(count_lines(load_text(path("r.csv"))), 37u);
  EXPECT_TRUE(fs::exists(path("r.history.csv")));

  const Outcome prof = invoke({"profile", "--in", path("r.csv"), "--tau", "1e-1,1e-3,1e-5",
                               "--svg", path("p.svg"), "--out", path("p.csv"), "--unsolved",
                               path("u.csv")});
  ASSERT_EQ(prof.code, 0) << prof.err;
  EXPECT_EQ(count_lines(load_text(path("p.csv"))), 1u + 3u * 4u * 41u);
  EXPECT_EQ(load_text(path("p.csv")), load_text(path("bench_profile.csv")));
  EXPECT_NE(load_text(path("p.svg")).find("</svg>"), std::string::npos);
  EXPECT_EQ(load_text(path("u.csv")).rfind("tau,problem\n", 0), 0u);

  std::vector<ProblemSpec> problems;
  for (const auto& name : registry_names()) problems.push_back(registry_get(name));
  const std::vector<StrategyKind> kinds = {StrategyKind::MaxMemory, StrategyKind::CLine,
                                           StrategyKind::Lambda, StrategyKind::Armijo};
  const auto run = run_matrix(problems, kinds, SolverConfig{}, default_taus());
  std::vector<ProfileCurve> curves;
  for (const auto& table : run.tables) {
    const auto family = profile(perf_ratios(table), default_alpha_grid());
    curves.insert(curves.end(), family.begin(), family.end());
  }
  std::ostringstream expected;
  write_profile_csv(expected, curves);
  EXPECT_EQ(load_text(path("p.csv")), expected.str());
}

TEST_F(CliFiles, ProfileToStdout) {
  ASSERT_EQ(invoke({"bench", "--problems", "hs3,hs4", "--strategies", "nmps,armijo", "--out",
                    path("r.csv")})
                .code,
            0);
  const Outcome o = invoke({"profile", "--in", path("r.csv"), "--tau", "0.1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.rfind("strategy,tau,alpha,rho\n", 0), 0u);
  EXPECT_EQ(count_lines(o.out), 1u + 2u * 41u);
}

TEST_F(CliFiles, ThreadsDoNotChangeOutput) {
  ASSERT_EQ(invoke({"bench", "--out", path("a.csv")}).code, 0);
  setenv("NMPS_THREADS", "3", 1);
  EXPECT_EQ(threads_from_env(), 3u);
  ASSERT_EQ(invoke({"bench", "--out", path("b.csv")}).code, 0);
  EXPECT_EQ(load_text(path("a.csv")), load_text(path("b.csv")));
  EXPECT_EQ(load_text(path("a.history.csv")), load_text(path("b.history.csv")));
  setenv("NMPS_THREADS", "many", 1);
  EXPECT_EQ(invoke({"bench", "--out", path("c.csv")}).code, 1);
}

TEST_F(CliFiles, ConfigFileOverriddenByFlags) {
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# solver settings\nmax_fe = 50\nstrategy=armijo\ntol=1e-3  # coarse\n\n";
  }
  const std::vector<std::string> args = {"solve", "--config", path("run.cfg"), "--problem", "hs1",
                                         "--max-fe", "60"};
  const CliConfig c = parse_args(args);
  EXPECT_EQ(c.solver.max_fe, 60u);
  EXPECT_EQ(c.solver.strategy.kind, StrategyKind::Armijo);
  EXPECT_EQ(c.solver.delta_tol, 1e-3);

  const std::vector<std::string> eq_form = {"solve", "--problem", "hs1",
                                            "--config=" + path("run.cfg")};
  EXPECT_EQ(parse_args(eq_form).solver.max_fe, 50u);
}

TEST_F(CliFiles, ConfigFileErrors) {
  {
    std::ofstream cfg(path("bad.cfg"));
    cfg << "max_fe=50\nwarp_speed=9\n";
  }
  const Outcome o = invoke({"solve", "--problem", "hs1", "--config", path("bad.cfg")});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("warp-speed"), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"solve", "--problem", "hs1", "--config", path("none.cfg")}).code, 3);
  {
    std::ofstream cfg(path("novalue.cfg"));
    cfg << "max_fe\n";
  }
  EXPECT_EQ(invoke({"solve", "--problem", "hs1", "--config", path("novalue.cfg")}).code, 1);
}

}  // namespace
}  // namespace nmps::cli
