#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aoi/distributions.hpp"
#include "aoi/error.hpp"

namespace aoi {

/// Node index; 0 is the source, whose age is zero at all times.
using NodeId = std::uint32_t;
inline constexpr NodeId kSource = 0;

/// Directed link (from -> to) on which `to` pulls updates from `from` as a
/// renewal process with i.i.d. gaps drawn from `dist`. `priority` orders
/// simultaneous arrivals into the same node (lower first).
struct Link {
  NodeId from;
  NodeId to;
  InterUpdateDistribution dist;
  std::uint32_t priority;
};

/// Unvalidated network description as read from a config file.
struct NetworkDesc {
  std::size_t node_count = 1;
  std::vector<Link> links;
};

struct ValidationError {
  ErrorKind kind;
  std::optional<NodeId> node;
  std::optional<std::size_t> link;
  std::string message;
};

/// Checks links in file order (unknown node, self loop, link into source,
/// duplicate priority), then reachability from the source. Reports the first
/// violation found.
std::optional<ValidationError> validate(const NetworkDesc& desc);

/// A validated, immutable network with precomputed adjacency.
class Network {
 public:
  /// Throws Error carrying the ValidationError kind on an invalid description.
  explicit Network(NetworkDesc desc);

  std::size_t node_count() const noexcept { return desc_.node_count; }
  std::size_t link_count() const noexcept { return desc_.links.size(); }
  std::span<const Link> links() const noexcept { return desc_.links; }
  const Link& link(std::size_t index) const { return desc_.links.at(index); }
  const NetworkDesc& desc() const noexcept { return desc_; }

  /// Indices of the links delivering into `node`, ascending by priority.
  std::span<const std::size_t> incoming(NodeId node) const { return incoming_.at(node); }

  /// Fewest hops from the source to `node`.
  std::size_t depth(NodeId node) const { return depth_.at(node); }

  bool is_tree() const noexcept { return is_tree_; }

 private:
  NetworkDesc desc_;
  std::vector<std::vector<std::size_t>> incoming_;
  std::vector<std::size_t> depth_;
  bool is_tree_ = true;
};

/// True iff every non-source node has exactly one incoming link.
inline bool is_tree(const Network& net) { return net.is_tree(); }

/// Link indices of the unique source-to-`node` path, source side first.
/// Empty for the source. Throws Error(kNotATree) on a non-tree network.
std::vector<std::size_t> path_to_source(const Network& net, NodeId node);

/// 0 -> 1 -> ... -> n with the given per-hop laws, source side first.
Network linear_chain(std::span<const InterUpdateDistribution> hops);

}  // namespace aoi
