#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "aoi/distributions.hpp"
#include "aoi/topology.hpp"

namespace aoi {

struct LinkContribution {
  std::size_t link;
  double contribution;
};

/// Long-run expected age of a tree node: the sum of E[Y^2]/(2E[Y]) over the
/// links on its path from the source. Contributions are listed source side
/// first and do not depend on the order of the links.
struct AgePrediction {
  NodeId node = kSource;
  double expected_age = 0.0;
  std::vector<LinkContribution> contributions;
};

/// Throws Error(kNotATree) on a non-tree network and
/// Error(kArithmeticLimitUndefined) if a link on the path is arithmetic.
AgePrediction node_expected_age(const Network& net, NodeId node);

/// (n, n * age_contribution(dist)) for n = 1..max_hops.
std::vector<std::pair<std::size_t, double>> hop_sweep_prediction(const InterUpdateDistribution& dist,
                                                                 std::size_t max_hops);

/// hops * (1 + v) / 2: the expected age after `hops` links of a unit-mean law
/// with variance v. v = 0 is the limit point of the formula (the law there is
/// constant, whose ensemble limit does not exist).
/// Throws Error(kVarianceOutOfRange) unless 0 <= v <= 1/3.
double variance_sweep_prediction(double v, std::size_t hops);

}  // namespace aoi
