#include "aoi/analytic.hpp"

#include "aoi/error.hpp"
#include "aoi/format.hpp"

namespace aoi {

AgePrediction node_expected_age(const Network& net, NodeId node) {
  AgePrediction p;
  p.node = node;
  for (std::size_t l : path_to_source(net, node)) {
    const double c = age_contribution(net.link(l).dist, LimitKind::kEnsemble);
    p.contributions.push_back({l, c});
    p.expected_age += c;
  }
  return p;
}

std::vector<std::pair<std::size_t, double>> hop_sweep_prediction(const InterUpdateDistribution& dist,
                                                                 std::size_t max_hops) {
  if (max_hops < 1) throw Error(ErrorKind::kInvalidParameter, "max_hops must be at least 1");
  const double per_hop = age_contribution(dist, LimitKind::kEnsemble);
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t n = 1; n <= max_hops; ++n) out.emplace_back(n, static_cast<double>(n) * per_hop);
  return out;
}

double variance_sweep_prediction(double v, std::size_t hops) {
  if (!(v >= 0.0 && v <= 1.0 / 3.0)) {
    throw Error(ErrorKind::kVarianceOutOfRange, "v must lie in [0, 1/3], got " + format_double(v));
  }
  if (hops < 1) throw Error(ErrorKind::kInvalidParameter, "hops must be at least 1");
  return static_cast<double>(hops) * (1.0 + v) / 2.0;
}

}  // namespace aoi
