#include "aoi/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <utility>

namespace aoi {
namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs_depths(const NetworkDesc& desc) {
  std::vector<std::vector<NodeId>> out(desc.node_count);
  for (const Link& l : desc.links) out[l.from].push_back(l.to);
  std::vector<std::size_t> depth(desc.node_count, kUnreached);
  std::deque<NodeId> frontier{kSource};
  depth[kSource] = 0;
  while (!frontier.empty()) {
    const NodeId n = frontier.front();
    frontier.pop_front();
    for (NodeId m : out[n]) {
      if (depth[m] == kUnreached) {
        depth[m] = depth[n] + 1;
        frontier.push_back(m);
      }
    }
  }
  return depth;
}

std::string link_name(const Link& l) { return "(" + std::to_string(l.from) + "," + std::to_string(l.to) + ")"; }

}  // namespace

std::optional<ValidationError> validate(const NetworkDesc& desc) {
  if (desc.node_count == 0) {
    return ValidationError{ErrorKind::kConfig, std::nullopt, std::nullopt, "network needs at least the source node"};
  }
  std::set<std::pair<NodeId, std::uint32_t>> priorities;
  for (std::size_t i = 0; i < desc.links.size(); ++i) {
    const Link& l = desc.links[i];
    if (l.from >= desc.node_count || l.to >= desc.node_count) {
      const NodeId bad = l.from >= desc.node_count ? l.from : l.to;
      return ValidationError{ErrorKind::kUnknownNode, bad, i,
                             "link " + std::to_string(i) + " " + link_name(l) + " references node " +
                                 std::to_string(bad) + " outside 0.." + std::to_string(desc.node_count - 1)};
    }
    if (l.from == l.to) {
      return ValidationError{ErrorKind::kSelfLoop, l.to, i, "link " + std::to_string(i) + " " + link_name(l)};
    }
    if (l.to == kSource) {
      return ValidationError{ErrorKind::kLinkIntoSource, l.to, i,
                             "link " + std::to_string(i) + " " + link_name(l) + " updates the source"};
    }
    if (!priorities.emplace(l.to, l.priority).second) {
      return ValidationError{ErrorKind::kDuplicatePriority, l.to, i,
                             "link " + std::to_string(i) + " " + link_name(l) + " reuses priority " +
                                 std::to_string(l.priority) + " at node " + std::to_string(l.to)};
    }
  }
  const auto depth = bfs_depths(desc);
  for (NodeId n = 0; n < desc.node_count; ++n) {
    if (depth[n] == kUnreached) {
      return ValidationError{ErrorKind::kUnreachableNode, n, std::nullopt,
                             "node " + std::to_string(n) + " has no path from the source"};
    }
  }
  return std::nullopt;
}

Network::Network(NetworkDesc desc) : desc_(std::move(desc)) {
  if (auto err = validate(desc_)) throw Error(err->kind, err->message);
  incoming_.resize(desc_.node_count);
  for (std::size_t i = 0; i < desc_.links.size(); ++i) incoming_[desc_.links[i].to].push_back(i);
  for (auto& in : incoming_) {
    std::sort(in.begin(), in.end(),
              [&](std::size_t x, std::size_t y) { return desc_.links[x].priority < desc_.links[y].priority; });
  }
  depth_ = bfs_depths(desc_);
  for (NodeId n = 1; n < desc_.node_count; ++n) is_tree_ = is_tree_ && incoming_[n].size() == 1;
}

std::vector<std::size_t> path_to_source(const Network& net, NodeId node) {
  if (!net.is_tree()) throw Error(ErrorKind::kNotATree, "path_to_source requires a tree network");
  if (node >= net.node_count()) throw Error(ErrorKind::kUnknownNode, "node " + std::to_string(node));
  std::vector<std::size_t> path;
  for (NodeId n = node; n != kSource;) {
    const std::size_t l = net.incoming(n).front();
    path.push_back(l);
    n = net.link(l).from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Network linear_chain(std::span<const InterUpdateDistribution> hops) {
  NetworkDesc desc;
  desc.node_count = hops.size() + 1;
  for (std::size_t i = 0; i < hops.size(); ++i) {
    desc.links.push_back(Link{static_cast<NodeId>(i), static_cast<NodeId>(i + 1), hops[i], 0});
  }
  return Network(std::move(desc));
}

}  // namespace aoi
