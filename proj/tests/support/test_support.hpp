#pragma once

// Generators and reference implementations shared by the unit and acceptance
// tests. Generators are driven by RngStream so every fuzz case is replayable
// from its seed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "aoi/distributions.hpp"
#include "aoi/engine.hpp"
#include "aoi/rng.hpp"
#include "aoi/topology.hpp"

namespace aoi::testing {

inline std::size_t pick(RngStream& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
}

inline double between(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Constant laws use multiples of 1/4 so that simultaneous arrivals really occur.
inline InterUpdateDistribution random_law(RngStream& rng, bool allow_constant = false) {
  switch (pick(rng, allow_constant ? 7 : 6)) {
    case 0:
      return Exponential(between(rng, 0.2, 5.0));
    case 1:
      return Rayleigh(between(rng, 0.1, 3.0));
    case 2:
      return ChiSquare(1 + static_cast<int>(pick(rng, 4)));
    case 3:
      return Beta(between(rng, 0.3, 5.0), between(rng, 0.3, 5.0));
    case 4:
      return Beta(1.0 + static_cast<double>(pick(rng, 5)), 1.0 + static_cast<double>(pick(rng, 5)));
    case 5: {
      const double a = between(rng, 0.0, 2.0);
      return Uniform(a, a + between(rng, 0.05, 3.0));
    }
    default:
      return Constant(0.25 * static_cast<double>(1 + pick(rng, 4)));
  }
}

// Random tree: node j > 0 hangs off a uniformly chosen earlier node.
inline NetworkDesc random_tree(RngStream& rng, std::size_t nodes, bool allow_constant = false) {
  NetworkDesc d;
  d.node_count = nodes;
  for (NodeId j = 1; j < nodes; ++j) {
    d.links.push_back(Link{static_cast<NodeId>(pick(rng, j)), j, random_law(rng, allow_constant), 0});
  }
  return d;
}

// Random reachable network with up to `max_nodes` nodes and `max_links` links.
// Extra links may point anywhere except the source, so cycles, parallel links
// and multiple parents all occur.
inline NetworkDesc random_network(RngStream& rng, std::size_t max_nodes = 6, std::size_t max_links = 8,
                                  bool allow_constant = true) {
  const std::size_t n = 2 + pick(rng, max_nodes - 1);
  NetworkDesc d = random_tree(rng, n, allow_constant);
  std::vector<std::uint32_t> in_count(n, 1);
  const std::size_t extra = pick(rng, max_links - (n - 1) + 1);
  for (std::size_t e = 0; e < extra; ++e) {
    const auto to = static_cast<NodeId>(1 + pick(rng, n - 1));
    auto from = static_cast<NodeId>(pick(rng, n));
    if (from == to) from = static_cast<NodeId>((from + 1) % n);
    if (from == to) continue;
    d.links.push_back(Link{from, to, random_law(rng, allow_constant), in_count[to]++});
  }
  return d;
}

// Fewest hops from the source, by plain BFS over the link list.
inline std::vector<std::size_t> bfs_depth(const NetworkDesc& d) {
  std::vector<std::size_t> depth(d.node_count, SIZE_MAX);
  std::deque<NodeId> todo{kSource};
  depth[kSource] = 0;
  while (!todo.empty()) {
    const NodeId u = todo.front();
    todo.pop_front();
    for (const Link& l : d.links) {
      if (l.from == u && depth[l.to] == SIZE_MAX) {
        depth[l.to] = depth[u] + 1;
        todo.push_back(l.to);
      }
    }
  }
  return depth;
}

// Source-to-node link indices found by BFS parent pointers.
inline std::vector<std::size_t> bfs_path(const NetworkDesc& d, NodeId node) {
  std::vector<std::optional<std::size_t>> parent(d.node_count);
  std::vector<bool> seen(d.node_count, false);
  std::deque<NodeId> todo{kSource};
  seen[kSource] = true;
  while (!todo.empty()) {
    const NodeId u = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < d.links.size(); ++i) {
      const Link& l = d.links[i];
      if (l.from == u && !seen[l.to]) {
        seen[l.to] = true;
        parent[l.to] = i;
        todo.push_back(l.to);
      }
    }
  }
  std::vector<std::size_t> path;
  for (NodeId v = node; v != kSource; v = d.links[*parent[v]].from) path.push_back(*parent[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Reference semantics: sort every epoch <= t by (time, sender depth, priority,
// link index) and apply u_to <- max(u_to, u_from) one at a time.
inline std::vector<double> naive_ages(const NetworkDesc& d, std::span<const LinkTrajectory> trajs, double t) {
  const auto depth = bfs_depth(d);
  std::vector<std::tuple<double, std::size_t, std::uint32_t, std::size_t>> events;
  for (const auto& tr : trajs) {
    const Link& l = d.links[tr.link];
    for (double e : tr.epochs) {
      if (e <= t) events.emplace_back(e, depth[l.from], l.priority, tr.link);
    }
  }
  std::sort(events.begin(), events.end());
  std::vector<double> u(d.node_count, 0.0);
  for (const auto& [time, dep, prio, link] : events) {
    const Link& l = d.links[link];
    const double fresh = l.from == kSource ? time : u[l.from];
    u[l.to] = std::max(u[l.to], fresh);
  }
  std::vector<double> ages(d.node_count, 0.0);
  for (NodeId j = 1; j < d.node_count; ++j) ages[j] = t - u[j];
  return ages;
}

// Time since the last epoch <= s, by linear scan.
inline double scan_recurrence(std::span<const double> epochs, double s) {
  double last = 0.0;
  for (double e : epochs) {
    if (e <= s) last = std::max(last, e);
  }
  return s - last;
}

}  // namespace aoi::testing
