#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "aoi/distributions.hpp"
#include "aoi/topology.hpp"

namespace aoi {

inline constexpr double kDefaultHorizon = 1000.0;

struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(iterations)
  double ci95_half_width = 0.0;
  std::size_t iterations = 0;
  double horizon = 0.0;
  std::uint64_t master_seed = 0;
};

/// Mean and standard error of `samples` (two-pass, in index order).
EnsembleEstimate summarize(std::span<const double> samples, double horizon, std::uint64_t master_seed);

/// Worker count from the AOI_THREADS environment variable, else the hardware
/// concurrency, at least 1.
std::size_t default_parallelism();

/// out[k] = fn(k) for k in [0, n), on up to `parallelism` threads. Results
/// land by index, so the output never depends on scheduling.
std::vector<double> parallel_map(std::size_t n, std::size_t parallelism, const std::function<double(std::size_t)>& fn);

/// Ensemble mean of X_node(T) over iterations with seeds mix_seed(master, k).
/// Bit-identical for every parallelism level.
EnsembleEstimate estimate_expected_age(const Network& net, NodeId node, double horizon, std::size_t iterations,
                                       std::uint64_t master_seed, std::size_t parallelism = 1);

/// (1/T) * integral of X_node over [0, T] on one sample path, integrated
/// exactly over the sawtooth between arrivals.
double estimate_time_average(const Network& net, NodeId node, double horizon, std::uint64_t seed);

/// Time average plus a batch-means standard error: [0, T] is cut into
/// `batches` equal windows, each integrated exactly.
struct TimeAverageEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t batches = 0;
};
TimeAverageEstimate time_average_with_error(const Network& net, NodeId node, double horizon, std::uint64_t seed,
                                            std::size_t batches = 50);

/// Monte Carlo check that E[A01(t - A12(t))] approaches lim E[A01(t)] for
/// independent renewal processes on two links.
struct Lemma1Result {
  double t = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double analytic_limit = 0.0;  // age_contribution(dist_01)
  double abs_gap = 0.0;
};
Lemma1Result lemma1_check(const InterUpdateDistribution& dist_01, const InterUpdateDistribution& dist_12, double t,
                          std::size_t iterations, std::uint64_t master_seed, std::size_t parallelism = 1);

/// Ordinary least squares y = intercept + slope * x with standard errors from
/// the residuals. Needs at least three points.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace aoi
