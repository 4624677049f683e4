// aoi: expected age of information in cache-updating networks with renewal
// (not necessarily Poisson) inter-update times.
//
//   aoi analytic        --net net.json [--node N ...]
//   aoi estimate        --net net.json --node N [--horizon T --iters K --seed S --threads P]
//   aoi time-average    --net net.json --node N [--horizon T --seed S --batches B]
//   aoi trajectory      --net net.json [--horizon T --seed S] --out traj.csv
//   aoi table2          [--horizon T --iters K --seed S --threads P --full]
//   aoi sweep-hops      [--dist JSON --max-hops N ...]
//   aoi sweep-variance  [--v-grid 0.05,0.1,... --hops 4 ...]
//   aoi oracle-check    --net net.json [--seeds K | --trajectory traj.csv] [--horizon T]
//   aoi lemma1          [--dist01 JSON --dist12 JSON --t-grid 100,1000,10000 ...]
//
// Exit status: 0 success, 1 failed check, 2 config or validation error.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aoi/analytic.hpp"
#include "aoi/config.hpp"
#include "aoi/engine.hpp"
#include "aoi/error.hpp"
#include "aoi/format.hpp"
#include "aoi/montecarlo.hpp"
#include "experiments.hpp"

namespace {

using namespace aoi;
using namespace aoi::cli;

struct Options {
  std::string net_path;
  std::vector<NodeId> nodes;
  double horizon = kDefaultHorizon;
  std::size_t iterations = 10000;
  std::uint64_t seed = 42;
  std::size_t threads = default_parallelism();
  std::string out_path;
  bool full = false;
  std::size_t batches = 50;
  std::size_t seeds = 100;
  std::string trajectory_path;
  std::string dist = R"({"kind":"uniform","a":0,"b":2})";
  std::string dist01 = R"({"kind":"uniform","a":0,"b":2})";
  std::string dist12 = R"({"kind":"rayleigh","scale":1})";
  std::size_t max_hops = 10;
  std::size_t hops = 4;
  std::vector<double> v_grid{0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  std::vector<double> t_grid{100.0, 1000.0, 10000.0};
};

// Writes to --out when given, else stdout.
int with_output(const Options& o, const std::function<int(std::ostream&)>& body) {
  if (o.out_path.empty()) return body(std::cout);
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kConfig, "cannot write " + o.out_path);
  return body(file);
}

void add_net(CLI::App* cmd, Options& o) { cmd->add_option("--net", o.net_path, "Network JSON file")->required(); }
void add_horizon(CLI::App* cmd, Options& o) { cmd->add_option("--horizon", o.horizon, "Simulation horizon T"); }
void add_seed(CLI::App* cmd, Options& o) { cmd->add_option("--seed", o.seed, "Master seed"); }
void add_ensemble(CLI::App* cmd, Options& o) {
  add_horizon(cmd, o);
  cmd->add_option("--iters", o.iterations, "Monte Carlo iterations")->check(CLI::Range(std::size_t{2}, SIZE_MAX));
  add_seed(cmd, o);
  cmd->add_option("--threads", o.threads, "Worker threads (default: AOI_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
}
void add_out(CLI::App* cmd, Options& o) { cmd->add_option("--out", o.out_path, "Output file (default stdout)"); }

int run_analytic(const Options& o) {
  const Network net = load_network(o.net_path);
  std::vector<NodeId> nodes = o.nodes;
  if (nodes.empty()) {
    for (NodeId n = 0; n < net.node_count(); ++n) nodes.push_back(n);
  }
  std::vector<AgePrediction> predictions;
  for (NodeId n : nodes) predictions.push_back(node_expected_age(net, n));
  return with_output(o, [&](std::ostream& out) {
    for (const auto& p : predictions) write_prediction_json(out, net, p);
    return kOk;
  });
}

NodeId single_node(const Options& o) {
  if (o.nodes.size() != 1) throw Error(ErrorKind::kConfig, "exactly one --node is required");
  return o.nodes.front();
}

int run_estimate(const Options& o) {
  const Network net = load_network(o.net_path);
  const NodeId node = single_node(o);
  const auto e = estimate_expected_age(net, node, o.horizon, o.iterations, o.seed, o.threads);
  return with_output(o, [&](std::ostream& out) {
    write_estimate_json(out, net, node, e);
    return kOk;
  });
}

int run_time_average(const Options& o) {
  const Network net = load_network(o.net_path);
  const NodeId node = single_node(o);
  const auto ta = time_average_with_error(net, node, o.horizon, o.seed, o.batches);
  return with_output(o, [&](std::ostream& out) {
    out << "{\"node\":" << node << ",\"T\":" << format_double(o.horizon) << ",\"seed\":" << o.seed
        << ",\"time_average\":" << format_double(ta.mean) << ",\"std_error\":" << format_double(ta.std_error)
        << ",\"batches\":" << ta.batches << "}\n";
    return kOk;
  });
}

int run_trajectory(const Options& o) {
  const Network net = load_network(o.net_path);
  const auto snap = simulate(net, o.horizon, o.seed, /*record_trajectories=*/true);
  return with_output(o, [&](std::ostream& out) {
    write_trajectory_csv(out, net, snap.trajectories);
    return kOk;
  });
}

int run_table2(const Options& o) {
  const std::size_t iterations = o.full ? 200000 : o.iterations;
  const auto rows = reproduce_table2(o.horizon, iterations, o.seed, o.threads);
  std::size_t outside = 0;
  for (const auto& r : rows) {
    if (std::abs(r.estimate.mean - kTable2Prediction) > 5.0 * r.estimate.std_error) ++outside;
  }
  std::cerr << "table2: " << rows.size() - outside << "/" << rows.size() << " means within 5 sigma of "
            << format_double(kTable2Prediction) << '\n';
  return with_output(o, [&](std::ostream& out) {
    write_table2_csv(out, rows);
    return outside == 0 ? kOk : kCheckFailed;
  });
}

void report_fit(const char* what, std::span<const SweepRow> rows) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& r : rows) {
    x.push_back(r.x);
    y.push_back(r.estimate.mean);
  }
  if (rows.size() >= 3) {
    const auto fit = fit_line(x, y);
    std::cerr << what << ": slope=" << format_double(fit.slope) << " (se " << format_double(fit.slope_se)
              << ") intercept=" << format_double(fit.intercept) << " (se " << format_double(fit.intercept_se) << ")\n";
  }
}

int run_sweep_hops(const Options& o) {
  const auto dist = parse_distribution(o.dist);
  const auto rows = sweep_hops(dist, o.max_hops, o.horizon, o.iterations, o.seed, o.threads);
  report_fit("sweep-hops", rows);
  const auto outliers = count_outliers(rows, 5.0);
  return with_output(o, [&](std::ostream& out) {
    write_hop_sweep_csv(out, rows);
    return outliers == 0 ? kOk : kCheckFailed;
  });
}

int run_sweep_variance(const Options& o) {
  const auto rows = sweep_variance(o.v_grid, o.hops, o.horizon, o.iterations, o.seed, o.threads);
  report_fit("sweep-variance", rows);
  const auto outliers = count_outliers(rows, 5.0);
  return with_output(o, [&](std::ostream& out) {
    write_variance_sweep_csv(out, rows);
    return outliers == 0 ? kOk : kCheckFailed;
  });
}

int run_oracle_check(const Options& o) {
  const Network net = load_network(o.net_path);
  OracleReport report;
  if (!o.trajectory_path.empty()) {
    std::ifstream in(o.trajectory_path);
    if (!in) throw Error(ErrorKind::kConfig, "cannot open trajectory file " + o.trajectory_path);
    report = oracle_check_replay(net, read_trajectory_csv(in, net), o.horizon);
  } else {
    report = oracle_check(net, o.seeds, o.horizon, o.seed);
  }
  return with_output(o, [&](std::ostream& out) {
    write_oracle_report(out, report);
    return report.passed() ? kOk : kCheckFailed;
  });
}

int run_lemma1(const Options& o) {
  const auto d01 = parse_distribution(o.dist01);
  const auto d12 = parse_distribution(o.dist12);
  const auto rows = lemma1_sweep(d01, d12, o.t_grid, o.iterations, o.seed, o.threads);
  return with_output(o, [&](std::ostream& out) {
    write_lemma1_csv(out, rows);
    return kOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age of information in multi-hop cache-updating networks"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&)> action;
  auto bind = [&](CLI::App* cmd, int (*fn)(const Options&)) { cmd->callback([&action, fn] { action = fn; }); };

  auto* analytic = app.add_subcommand("analytic", "Closed-form expected age of tree nodes (JSON lines)");
  add_net(analytic, o);
  analytic->add_option("--node", o.nodes, "Node(s); default all");
  add_out(analytic, o);
  bind(analytic, run_analytic);

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo ensemble estimate of E[X_node(T)] (JSON)");
  add_net(estimate, o);
  estimate->add_option("--node", o.nodes, "Node")->required()->expected(1);
  add_ensemble(estimate, o);
  add_out(estimate, o);
  bind(estimate, run_estimate);

  auto* time_avg = app.add_subcommand("time-average", "Exact sawtooth time average on one sample path (JSON)");
  add_net(time_avg, o);
  time_avg->add_option("--node", o.nodes, "Node")->required()->expected(1);
  add_horizon(time_avg, o);
  add_seed(time_avg, o);
  time_avg->add_option("--batches", o.batches, "Batches for the standard error")->check(CLI::PositiveNumber);
  add_out(time_avg, o);
  bind(time_avg, run_time_average);

  auto* traj = app.add_subcommand("trajectory", "Dump renewal epochs of one run (CSV)");
  add_net(traj, o);
  add_horizon(traj, o);
  add_seed(traj, o);
  add_out(traj, o);
  bind(traj, run_trajectory);

  auto* table2 = app.add_subcommand("table2", "All six law-to-link mappings on a 3-hop chain (CSV)");
  add_ensemble(table2, o);
  table2->add_flag("--full", o.full, "Use 2e5 iterations per mapping");
  add_out(table2, o);
  bind(table2, run_table2);
  table2->preparse_callback([&o](std::size_t) { o.iterations = 20000; });

  auto* hops = app.add_subcommand("sweep-hops", "Expected age versus hop count (CSV)");
  hops->add_option("--dist", o.dist, "Per-hop law as JSON");
  hops->add_option("--max-hops", o.max_hops, "Largest chain length")->check(CLI::PositiveNumber);
  add_ensemble(hops, o);
  add_out(hops, o);
  bind(hops, run_sweep_hops);

  auto* var = app.add_subcommand("sweep-variance", "Expected age versus inter-update variance at unit mean (CSV)");
  var->add_option("--v-grid", o.v_grid, "Variances in (0, 1/3]")->delimiter(',');
  var->add_option("--hops", o.hops, "Chain length")->check(CLI::PositiveNumber);
  add_ensemble(var, o);
  add_out(var, o);
  bind(var, run_sweep_variance);

  auto* oracle = app.add_subcommand("oracle-check", "Compare engine ages with the backward recursion");
  add_net(oracle, o);
  oracle->add_option("--seeds", o.seeds, "Number of seeds to simulate");
  oracle->add_option("--trajectory", o.trajectory_path, "Replay a trajectory CSV instead of simulating");
  add_horizon(oracle, o);
  add_seed(oracle, o);
  add_out(oracle, o);
  bind(oracle, run_oracle_check);

  auto* lemma = app.add_subcommand("lemma1", "E[A01(t - A12(t))] against its limit over a t grid (CSV)");
  lemma->add_option("--dist01", o.dist01, "Upstream law as JSON");
  lemma->add_option("--dist12", o.dist12, "Downstream law as JSON");
  lemma->add_option("--t-grid", o.t_grid, "Evaluation times")->delimiter(',');
  add_ensemble(lemma, o);
  add_out(lemma, o);
  bind(lemma, run_lemma1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    return action(o);
  } catch (const aoi::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
