#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "aoi/config.hpp"
#include "aoi/engine.hpp"
#include "aoi/error.hpp"
#include "experiments.hpp"
#include "test_support.hpp"

namespace aoi {
namespace {

using namespace aoi::cli;

const std::string kConfigs = AOI_CONFIG_DIR;

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(AOI_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "aoi_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(MappingStudy, SixRowsInFixedOrder) {
  const auto rows = reproduce_table2(100.0, 200, 42, 2);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].labels[0], "Rayleigh(1)");
  EXPECT_EQ(rows[0].labels[1], "ChiSquare(1)");
  EXPECT_EQ(rows[0].labels[2], "Beta(2,3)");
  EXPECT_EQ(rows[3].labels[0], "ChiSquare(1)");
  EXPECT_EQ(rows[3].labels[2], "Rayleigh(1)");
  EXPECT_EQ(rows[5].labels[0], "Beta(2,3)");
  EXPECT_EQ(rows[5].labels[2], "ChiSquare(1)");
  for (const auto& r : rows) {
    EXPECT_NEAR(r.predicted, kTable2Prediction, 5e-5);
    EXPECT_EQ(r.estimate.iterations, 200u);
  }
  std::ostringstream csv;
  write_table2_csv(csv, rows);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "link_0_1,link_1_2,link_2_3,mean,std_error,ci95");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
}

TEST(Sweeps, HopRows) {
  const auto rows = sweep_hops(Uniform(0.0, 2.0), 4, 100.0, 100, 1, 2);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].x, static_cast<double>(i + 1));
    EXPECT_NEAR(rows[i].predicted, 2.0 * (i + 1) / 3.0, 1e-12);
  }
  std::ostringstream csv;
  write_hop_sweep_csv(csv, rows);
  EXPECT_EQ(csv.str().rfind("n,mean,std_error,predicted\n1,", 0), 0u);
}

TEST(Sweeps, VarianceRows) {
  const std::vector<double> grid{0.1, 0.2, 0.3};
  const auto rows = sweep_variance(grid, 4, 100.0, 100, 1, 2);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].predicted, 2.2, 1e-12);
  EXPECT_NEAR(rows[1].predicted, 2.4, 1e-12);
  EXPECT_NEAR(rows[2].predicted, 2.6, 1e-12);
  std::ostringstream csv;
  write_variance_sweep_csv(csv, rows);
  EXPECT_EQ(csv.str().rfind("v,mean,std_error,predicted\n0.1,", 0), 0u);
  const std::vector<double> bad{0.0};
  EXPECT_THROW(sweep_variance(bad, 4, 100.0, 10, 1, 1), Error);
}

TEST(Sweeps, CountOutliers) {
  std::vector<SweepRow> rows(3);
  for (auto& r : rows) r.estimate.std_error = 0.1;
  rows[0].estimate.mean = 0.49;
  rows[1].estimate.mean = -0.51;
  rows[2].estimate.mean = 0.2;
  EXPECT_EQ(count_outliers(rows, 5.0), 1u);
  EXPECT_EQ(count_outliers(rows, 1.0), 3u);
}

TEST(OracleCheck, ChainAndDiamondPass) {
  const auto chain = oracle_check(load_network(kConfigs + "/chain5_uniform.json"), 100, 50.0, 42);
  EXPECT_TRUE(chain.passed());
  EXPECT_EQ(chain.comparisons, 100u * 3 * 5 * 2);
  const auto diamond = oracle_check(load_network(kConfigs + "/diamond.json"), 100, 50.0, 42);
  EXPECT_TRUE(diamond.passed());
  std::ostringstream report;
  write_oracle_report(report, diamond);
  EXPECT_EQ(report.str().rfind("PASS comparisons=", 0), 0u);
}

TEST(OracleCheck, ReplayOfRecordedTrace) {
  const Network net = load_network(kConfigs + "/diamond.json");
  const auto snap = simulate(net, 30.0, 3, true);
  EXPECT_TRUE(oracle_check_replay(net, snap.trajectories, 30.0).passed());
}

TEST(OracleCheck, FailureReportListsMismatches) {
  OracleReport r;
  r.comparisons = 3;
  r.mismatches = 1;
  r.max_gap = 0.5;
  r.failures.push_back("general t=1 node=2 engine=1 oracle=0.5 gap=0.5");
  std::ostringstream out;
  write_oracle_report(out, r);
  EXPECT_NE(out.str().find("MISMATCH general"), std::string::npos);
  EXPECT_NE(out.str().find("FAIL comparisons=3 mismatches=1"), std::string::npos);
}

TEST(ComposedRecurrenceSweep, Rows) {
  const std::vector<double> grid{10.0, 100.0};
  const auto rows = lemma1_sweep(Uniform(0.0, 2.0), Rayleigh(1.0), grid, 200, 1, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].t, 100.0);
  std::ostringstream csv;
  write_lemma1_csv(csv, rows);
  EXPECT_EQ(csv.str().rfind("t,estimate,std_error,limit,gap\n10,", 0), 0u);
}

TEST(Json, PredictionAndEstimateRecords) {
  const Network net = load_network(kConfigs + "/table2_chain.json");
  std::ostringstream out;
  write_prediction_json(out, net, node_expected_age(net, 3));
  EXPECT_EQ(out.str().rfind("{\"node\":3,\"expected_age\":2.54788456080286", 0), 0u);
  std::ostringstream est;
  write_estimate_json(est, net, 3, estimate_expected_age(net, 3, 10.0, 10, 5, 1));
  EXPECT_EQ(est.str().rfind("{\"config_hash\":\"", 0), 0u);
  EXPECT_NE(est.str().find("\"iterations\":10,"), std::string::npos);
  EXPECT_NE(est.str().find("\"seed\":5}"), std::string::npos);
}

TEST(Binary, AnalyticOnChain) {
  const auto r = run("analytic --net " + kConfigs + "/table2_chain.json --node 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"expected_age\":2.5478845608"), std::string::npos);
  const auto src = run("analytic --net " + kConfigs + "/table2_chain.json --node 0");
  EXPECT_EQ(src.status, 0);
  EXPECT_NE(src.out.find("\"expected_age\":0,\"contributions\":[]"), std::string::npos);
}

TEST(Binary, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("analytic --net " + kConfigs + "/diamond.json --node 3").status, 2);
  EXPECT_EQ(run("analytic --net /nonexistent.json --node 1").status, 2);
  EXPECT_EQ(run("estimate --net " + kConfigs + "/table2_chain.json --node 9 --iters 10").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("estimate --net " + kConfigs + "/table2_chain.json --node 3 --iters 1").status, 2);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"nodes":2,"links":[{"from":1,"to":0,"dist":{"kind":"rayleigh","scale":1}}]})";
  EXPECT_EQ(run("analytic --net " + bad.string()).status, 2);
}

TEST(Binary, CorruptedTrajectoryExitsTwo) {
  const auto traj = scratch("corrupt.csv");
  std::ofstream(traj) << "link_from,link_to,epoch\n0,1,2.0\n0,1,1.0\n";
  EXPECT_EQ(run("oracle-check --net " + kConfigs + "/chain5_uniform.json --trajectory " + traj.string()).status, 2);
}

TEST(Binary, TrajectoryThenReplayCheck) {
  const auto traj = scratch("diamond.csv");
  ASSERT_EQ(run("trajectory --net " + kConfigs + "/diamond.json --horizon 40 --seed 3 --out " + traj.string()).status, 0);
  const auto r = run("oracle-check --net " + kConfigs + "/diamond.json --horizon 40 --trajectory " + traj.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
}

TEST(Binary, OutputIndependentOfThreads) {
  const std::string base = "estimate --net " + kConfigs + "/table2_chain.json --node 3 --horizon 100 --iters 500";
  const auto a = run(base + " --threads 1");
  const auto b = run(base + " --threads 4");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Binary, OutFlagWritesFile) {
  const auto path = scratch("hops.csv");
  std::filesystem::remove(path);
  const auto r = run("sweep-hops --max-hops 3 --horizon 50 --iters 200 --out " + path.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "n,mean,std_error,predicted");
}

}  // namespace
}  // namespace aoi
