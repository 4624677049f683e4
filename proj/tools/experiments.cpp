#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "aoi/config.hpp"
#include "aoi/format.hpp"
#include "aoi/oracle.hpp"
#include "aoi/rng.hpp"

namespace aoi::cli {
namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void write_prediction_json(std::ostream& out, const Network& net, const AgePrediction& p) {
  out << "{\"node\":" << p.node << ",\"expected_age\":" << format_double(p.expected_age) << ",\"contributions\":[";
  for (std::size_t i = 0; i < p.contributions.size(); ++i) {
    const Link& l = net.link(p.contributions[i].link);
    if (i > 0) out << ',';
    out << "{\"from\":" << l.from << ",\"to\":" << l.to
        << ",\"contribution\":" << format_double(p.contributions[i].contribution) << '}';
  }
  out << "]}\n";
}

void write_estimate_json(std::ostream& out, const Network& net, NodeId node, const EnsembleEstimate& e) {
  out << "{\"config_hash\":\"" << hex64(config_hash(net.desc())) << "\",\"node\":" << node
      << ",\"T\":" << format_double(e.horizon) << ",\"iterations\":" << e.iterations
      << ",\"mean\":" << format_double(e.mean) << ",\"std_error\":" << format_double(e.std_error)
      << ",\"ci95\":" << format_double(e.ci95_half_width) << ",\"seed\":" << e.master_seed << "}\n";
}

std::vector<Table2Row> reproduce_table2(double horizon, std::size_t iterations, std::uint64_t seed,
                                        std::size_t threads) {
  const std::array<InterUpdateDistribution, 3> laws{Rayleigh(1.0), ChiSquare(1), Beta(2.0, 3.0)};
  // Fixed row order; each law appears twice in every link position.
  constexpr std::array<std::array<int, 3>, 6> kAssignments{{
      {0, 1, 2},
      {0, 2, 1},
      {1, 0, 2},
      {1, 2, 0},
      {2, 1, 0},
      {2, 0, 1},
  }};
  std::vector<Table2Row> rows;
  for (std::size_t r = 0; r < kAssignments.size(); ++r) {
    std::vector<InterUpdateDistribution> hops;
    Table2Row row;
    for (std::size_t h = 0; h < 3; ++h) {
      hops.push_back(laws[kAssignments[r][h]]);
      row.labels[h] = describe(hops.back());
    }
    const Network net = linear_chain(hops);
    row.estimate = estimate_expected_age(net, 3, horizon, iterations, mix_seed(seed, r), threads);
    row.estimate.master_seed = seed;
    row.predicted = node_expected_age(net, 3).expected_age;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_table2_csv(std::ostream& out, std::span<const Table2Row> rows) {
  out << "link_0_1,link_1_2,link_2_3,mean,std_error,ci95\n";
  for (const auto& r : rows) {
    out << r.labels[0] << ',' << r.labels[1] << ',' << r.labels[2] << ',' << format_double(r.estimate.mean) << ','
        << format_double(r.estimate.std_error) << ',' << format_double(r.estimate.ci95_half_width) << '\n';
  }
}

std::vector<SweepRow> sweep_hops(const InterUpdateDistribution& dist, std::size_t max_hops, double horizon,
                                 std::size_t iterations, std::uint64_t seed, std::size_t threads) {
  std::vector<SweepRow> rows;
  for (const auto& [n, predicted] : hop_sweep_prediction(dist, max_hops)) {
    const std::vector<InterUpdateDistribution> hops(n, dist);
    const Network net = linear_chain(hops);
    SweepRow row{static_cast<double>(n), {}, predicted};
    row.estimate = estimate_expected_age(net, static_cast<NodeId>(n), horizon, iterations, mix_seed(seed, n), threads);
    row.estimate.master_seed = seed;
    rows.push_back(row);
  }
  return rows;
}

void write_hop_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "n,mean,std_error,predicted\n";
  for (const auto& r : rows) {
    out << static_cast<std::size_t>(r.x) << ',' << format_double(r.estimate.mean) << ','
        << format_double(r.estimate.std_error) << ',' << format_double(r.predicted) << '\n';
  }
}

std::vector<SweepRow> sweep_variance(std::span<const double> v_grid, std::size_t hops, double horizon,
                                     std::size_t iterations, std::uint64_t seed, std::size_t threads) {
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < v_grid.size(); ++i) {
    const double v = v_grid[i];
    const std::vector<InterUpdateDistribution> laws(hops, unit_mean_uniform(v));
    const Network net = linear_chain(laws);
    SweepRow row{v, {}, variance_sweep_prediction(v, hops)};
    row.estimate =
        estimate_expected_age(net, static_cast<NodeId>(hops), horizon, iterations, mix_seed(seed, i), threads);
    row.estimate.master_seed = seed;
    rows.push_back(row);
  }
  return rows;
}

void write_variance_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "v,mean,std_error,predicted\n";
  for (const auto& r : rows) {
    out << format_double(r.x) << ',' << format_double(r.estimate.mean) << ',' << format_double(r.estimate.std_error)
        << ',' << format_double(r.predicted) << '\n';
  }
}

std::size_t count_outliers(std::span<const SweepRow> rows, double sigmas) {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const SweepRow& r) {
    return std::abs(r.estimate.mean - r.predicted) > sigmas * r.estimate.std_error;
  }));
}

namespace {

void compare(OracleReport& report, double t, NodeId node, const char* route, double engine, double oracle) {
  const double gap = std::abs(engine - oracle);
  ++report.comparisons;
  report.max_gap = std::max(report.max_gap, gap);
  if (!(gap <= kOracleTolerance)) {
    ++report.mismatches;
    if (report.failures.size() < 10) {
      std::ostringstream msg;
      msg << route << " t=" << format_double(t) << " node=" << node << " engine=" << format_double(engine)
          << " oracle=" << format_double(oracle) << " gap=" << format_double(gap);
      report.failures.push_back(msg.str());
    }
  }
}

// `engine_ages[k]` holds all node ages at checkpoints[k].
void compare_against_oracles(OracleReport& report, const Network& net, std::span<const LinkTrajectory> trajectories,
                             std::span<const double> checkpoints,
                             const std::vector<std::vector<double>>& engine_ages) {
  GeneralAgeOracle general(net, trajectories);
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    const double t = checkpoints[k];
    for (NodeId n = 1; n < net.node_count(); ++n) {
      compare(report, t, n, "general", engine_ages[k][n], general.age(n, t));
      if (net.is_tree()) {
        std::vector<LinkTrajectory> path;
        for (std::size_t l : path_to_source(net, n)) path.push_back(trajectories[l]);
        compare(report, t, n, "chain", engine_ages[k][n], recursive_age(path, t));
      }
    }
  }
}

}  // namespace

OracleReport oracle_check(const Network& net, std::size_t seeds, double horizon, std::uint64_t master_seed) {
  OracleReport report;
  const std::array<double, 3> checkpoints{horizon / 4.0, horizon / 2.0, horizon};
  for (std::size_t s = 0; s < seeds; ++s) {
    Simulator sim(net, mix_seed(master_seed, s), /*record=*/true);
    std::vector<std::vector<double>> ages;
    for (double t : checkpoints) {
      sim.advance_to(t);
      ages.push_back(sim.ages());
    }
    compare_against_oracles(report, net, sim.trajectories(), checkpoints, ages);
  }
  return report;
}

OracleReport oracle_check_replay(const Network& net, std::span<const LinkTrajectory> trajectories, double horizon) {
  OracleReport report;
  const std::array<double, 3> checkpoints{horizon / 4.0, horizon / 2.0, horizon};
  Simulator sim(net, trajectories);
  std::vector<std::vector<double>> ages;
  for (double t : checkpoints) {
    sim.advance_to(t);
    ages.push_back(sim.ages());
  }
  std::vector<LinkTrajectory> by_link(net.link_count());
  for (std::size_t l = 0; l < by_link.size(); ++l) by_link[l].link = l;
  for (const auto& t : trajectories) by_link.at(t.link).epochs = t.epochs;
  compare_against_oracles(report, net, by_link, checkpoints, ages);
  return report;
}

void write_oracle_report(std::ostream& out, const OracleReport& report) {
  for (const auto& f : report.failures) out << "MISMATCH " << f << '\n';
  out << (report.passed() ? "PASS" : "FAIL") << " comparisons=" << report.comparisons
      << " mismatches=" << report.mismatches << " max_gap=" << format_double(report.max_gap)
      << " tolerance=" << format_double(kOracleTolerance) << '\n';
}

std::vector<Lemma1Result> lemma1_sweep(const InterUpdateDistribution& dist_01, const InterUpdateDistribution& dist_12,
                                       std::span<const double> t_grid, std::size_t iterations, std::uint64_t seed,
                                       std::size_t threads) {
  std::vector<Lemma1Result> rows;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    rows.push_back(lemma1_check(dist_01, dist_12, t_grid[i], iterations, mix_seed(seed, i), threads));
  }
  return rows;
}

void write_lemma1_csv(std::ostream& out, std::span<const Lemma1Result> rows) {
  out << "t,estimate,std_error,limit,gap\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.estimate) << ',' << format_double(r.std_error) << ','
        << format_double(r.analytic_limit) << ',' << format_double(r.abs_gap) << '\n';
  }
}

}  // namespace aoi::cli
