#include "aoi/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "aoi/engine.hpp"
#include "aoi/error.hpp"
#include "aoi/oracle.hpp"
#include "aoi/rng.hpp"

namespace aoi {

EnsembleEstimate summarize(std::span<const double> samples, double horizon, std::uint64_t master_seed) {
  EnsembleEstimate e;
  e.iterations = samples.size();
  e.horizon = horizon;
  e.master_seed = master_seed;
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double x : samples) sum += x;
  e.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - e.mean) * (x - e.mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(samples.size()));
  }
  e.ci95_half_width = 1.96 * e.std_error;
  return e;
}

std::size_t default_parallelism() {
  if (const char* env = std::getenv("AOI_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parallel_map(std::size_t n, std::size_t parallelism, const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(n);
  const std::size_t workers = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) out[k] = fn(k);
    return out;
  }
  constexpr std::size_t kChunk = 64;
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto work = [&] {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= n) return;
        const std::size_t end = std::min(n, begin + kChunk);
        for (std::size_t k = begin; k < end; ++k) out[k] = fn(k);
      }
    } catch (...) {
      next.store(n);
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

EnsembleEstimate estimate_expected_age(const Network& net, NodeId node, double horizon, std::size_t iterations,
                                       std::uint64_t master_seed, std::size_t parallelism) {
  if (iterations < 2) throw Error(ErrorKind::kInvalidParameter, "need at least two iterations");
  if (node >= net.node_count()) throw Error(ErrorKind::kUnknownNode, "node " + std::to_string(node));
  const auto ages = parallel_map(iterations, parallelism, [&](std::size_t k) {
    return age_at(net, horizon, mix_seed(master_seed, k), node);
  });
  return summarize(ages, horizon, master_seed);
}

TimeAverageEstimate time_average_with_error(const Network& net, NodeId node, double horizon, std::uint64_t seed,
                                            std::size_t batches) {
  if (!(horizon > 0.0)) throw Error(ErrorKind::kInvalidParameter, "horizon must be positive");
  if (node >= net.node_count()) throw Error(ErrorKind::kUnknownNode, "node " + std::to_string(node));
  if (batches < 1) throw Error(ErrorKind::kInvalidParameter, "need at least one batch");
  if (node == kSource) return {0.0, 0.0, batches};

  Simulator sim(net, seed);
  const double width = horizon / static_cast<double>(batches);
  std::vector<double> batch_means(batches);
  double clock = 0.0;
  double age = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    const double boundary = b + 1 == batches ? horizon : width * static_cast<double>(b + 1);
    double area = 0.0;
    for (;;) {
      const double next = sim.next_arrival_time();
      const double end = std::min(next, boundary);
      const double dt = end - clock;
      area += age * dt + 0.5 * dt * dt;
      age += dt;
      clock = end;
      if (next > boundary) break;
      sim.step();
      age = sim.age(node);
    }
    batch_means[b] = area / (boundary - width * static_cast<double>(b));
  }

  TimeAverageEstimate out;
  out.batches = batches;
  const auto s = summarize(batch_means, horizon, seed);
  out.mean = s.mean;
  out.std_error = s.std_error;
  return out;
}

double estimate_time_average(const Network& net, NodeId node, double horizon, std::uint64_t seed) {
  return time_average_with_error(net, node, horizon, seed, 1).mean;
}

namespace {

// Renewal epochs on [0, until] of a fresh process.
LinkTrajectory renewal_path(const InterUpdateDistribution& dist, RngStream& rng, double until) {
  LinkTrajectory traj;
  for (double t = sample(dist, rng); t <= until; t += sample(dist, rng)) traj.epochs.push_back(t);
  return traj;
}

}  // namespace

Lemma1Result lemma1_check(const InterUpdateDistribution& dist_01, const InterUpdateDistribution& dist_12, double t,
                          std::size_t iterations, std::uint64_t master_seed, std::size_t parallelism) {
  if (!(t > 0.0)) throw Error(ErrorKind::kInvalidParameter, "t must be positive");
  if (iterations < 2) throw Error(ErrorKind::kInvalidParameter, "need at least two iterations");
  Lemma1Result r;
  r.t = t;
  r.analytic_limit = age_contribution(dist_01, LimitKind::kEnsemble);
  age_contribution(dist_12, LimitKind::kEnsemble);  // rejects an arithmetic inner law

  const auto draws = parallel_map(iterations, parallelism, [&](std::size_t k) {
    const std::uint64_t seed = mix_seed(master_seed, k);
    RngStream upstream(substream_seed(seed, 0));
    RngStream downstream(substream_seed(seed, 1));
    const double rewound = t - backward_recurrence(renewal_path(dist_12, downstream, t), t);
    return backward_recurrence(renewal_path(dist_01, upstream, rewound), rewound);
  });
  const auto s = summarize(draws, t, master_seed);
  r.estimate = s.mean;
  r.std_error = s.std_error;
  r.abs_gap = std::abs(r.estimate - r.analytic_limit);
  return r;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw Error(ErrorKind::kInvalidParameter, "line fit needs at least three paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::kInvalidParameter, "line fit needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    rss += r * r;
  }
  const double sigma2 = rss / (n - 2.0);
  f.slope_se = std::sqrt(sigma2 / sxx);
  f.intercept_se = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
  return f;
}

}  // namespace aoi
