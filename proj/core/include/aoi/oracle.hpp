#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "aoi/engine.hpp"
#include "aoi/topology.hpp"

namespace aoi {

// Sample-path age evaluated backwards from recorded epochs, without forward
// simulation. Used to cross-check the engine.

/// Time since the last epoch <= s; s itself when no epoch precedes s (every
/// process is taken to renew at 0).
double backward_recurrence(const LinkTrajectory& traj, double s);

/// Age of a chain end split into backward recurrence times of successive
/// upstream links at rewound instants:
///   D_1 = A_last(t),  D_i = A_{n-i+1}(t - D_1 - ... - D_{i-1}).
/// segments[0] is the user-side link.
struct DeltaDecomposition {
  double time = 0.0;
  std::vector<double> segments;

  double total() const;
};

/// `path` lists the trajectories of a source-to-user path, source side first.
DeltaDecomposition delta_decomposition(std::span<const LinkTrajectory> path, double t);

/// Age at the end of the path: the sum of its segments.
double recursive_age(std::span<const LinkTrajectory> path, double t);

/// Age of any node in a general network by the min-over-incoming recursion:
/// take the most recent arrival into j, then the fresher of the sender and j
/// itself just before that arrival, plus the time elapsed since.
/// Simultaneous arrivals rank by (sender depth, link priority, link index),
/// the same order the engine applies them in.
///
/// Memoizes per (node, arrival event), so repeated queries on one set of
/// trajectories are cheap. Evaluation uses an explicit stack; arbitrarily long
/// trajectories and cyclic networks are fine.
class GeneralAgeOracle {
 public:
  /// `trajectories` holds one entry per link (matched by .link); the network
  /// must outlive the oracle.
  GeneralAgeOracle(const Network& net, std::span<const LinkTrajectory> trajectories);

  double age(NodeId node, double t);

 private:
  struct Event {
    double time;
    std::uint32_t rank;
    std::size_t link;
    std::size_t id;  // unique across all links
  };

  std::optional<Event> latest_before(NodeId node, double time, std::uint32_t rank) const;
  double age_before(NodeId node, const Event& cut);

  const Network* net_;
  std::vector<std::span<const double>> epochs_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::size_t> offset_;
  std::unordered_map<std::uint64_t, double> memo_;
};

/// One-shot form of GeneralAgeOracle::age.
double general_recursive_age(const Network& net, std::span<const LinkTrajectory> trajectories, NodeId node,
                             double t);

}  // namespace aoi
