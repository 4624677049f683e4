#pragma once

// Experiment drivers behind the `aoi` subcommands. Each driver is a pure
// function of its arguments (seeded), and each writer emits a fixed column
// layout, so reruns produce byte-identical files at any thread count.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aoi/analytic.hpp"
#include "aoi/distributions.hpp"
#include "aoi/engine.hpp"
#include "aoi/montecarlo.hpp"
#include "aoi/topology.hpp"

namespace aoi::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2 };

/// One JSON object per line:
/// {"node":3,"expected_age":2.547...,"contributions":[{"from":0,"to":1,"contribution":0.79...},...]}
void write_prediction_json(std::ostream& out, const Network& net, const AgePrediction& p);

/// {"config_hash":"...","node":..,"T":..,"iterations":..,"mean":..,"std_error":..,"ci95":..}
void write_estimate_json(std::ostream& out, const Network& net, NodeId node, const EnsembleEstimate& e);

// --- Mapping of three laws onto a 3-hop chain --------------------------------

inline constexpr double kTable2Prediction = 2.5479;  // 0.7979 + 1.5 + 0.25, contributions rounded to 4 digits

struct Table2Row {
  std::array<std::string, 3> labels;  // laws on links (0,1), (1,2), (2,3)
  EnsembleEstimate estimate;
  double predicted = 0.0;  // full-precision path sum
};

/// All 3! assignments of Rayleigh(1), ChiSquare(1), Beta(2,3) to the links,
/// in a fixed order (see the CSV rows).
std::vector<Table2Row> reproduce_table2(double horizon, std::size_t iterations, std::uint64_t seed,
                                        std::size_t threads);
/// link_0_1,link_1_2,link_2_3,mean,std_error,ci95
void write_table2_csv(std::ostream& out, std::span<const Table2Row> rows);

// --- Sweeps ------------------------------------------------------------------

struct SweepRow {
  double x = 0.0;  // hop count or variance
  EnsembleEstimate estimate;
  double predicted = 0.0;
};

/// n-hop chains of `dist` for n = 1..max_hops, age of the last node.
std::vector<SweepRow> sweep_hops(const InterUpdateDistribution& dist, std::size_t max_hops, double horizon,
                                 std::size_t iterations, std::uint64_t seed, std::size_t threads);
/// n,mean,std_error,predicted
void write_hop_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// `hops`-hop chains of unit-mean Uniform laws with variance v for each v in the grid.
std::vector<SweepRow> sweep_variance(std::span<const double> v_grid, std::size_t hops, double horizon,
                                     std::size_t iterations, std::uint64_t seed, std::size_t threads);
/// v,mean,std_error,predicted
void write_variance_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Rows whose mean is more than `sigmas` standard errors from the prediction.
std::size_t count_outliers(std::span<const SweepRow> rows, double sigmas);

// --- Engine vs. backward-recursion oracle ------------------------------------

struct OracleReport {
  std::size_t comparisons = 0;
  std::size_t mismatches = 0;
  double max_gap = 0.0;
  std::vector<std::string> failures;  // first few mismatches, human readable

  bool passed() const { return mismatches == 0; }
};

inline constexpr double kOracleTolerance = 1e-9;

/// Simulates `seeds` runs (seed mix_seed(master, s)) with recorded epochs and
/// compares every node's engine age against the oracle at T/4, T/2 and T.
/// Tree networks are checked with both the chain segment sum and the general
/// recursion; other networks with the general recursion.
OracleReport oracle_check(const Network& net, std::size_t seeds, double horizon, std::uint64_t master_seed);

/// Same comparison on externally supplied epochs (engine in replay mode).
OracleReport oracle_check_replay(const Network& net, std::span<const LinkTrajectory> trajectories, double horizon);

void write_oracle_report(std::ostream& out, const OracleReport& report);

// --- Composition of backward recurrence times ------------------------------

std::vector<Lemma1Result> lemma1_sweep(const InterUpdateDistribution& dist_01, const InterUpdateDistribution& dist_12,
                                       std::span<const double> t_grid, std::size_t iterations, std::uint64_t seed,
                                       std::size_t threads);
/// t,estimate,std_error,limit,gap
void write_lemma1_csv(std::ostream& out, std::span<const Lemma1Result> rows);

}  // namespace aoi::cli
