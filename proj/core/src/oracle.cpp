#include "aoi/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "aoi/error.hpp"

namespace aoi {

double backward_recurrence(const LinkTrajectory& traj, double s) {
  auto it = std::upper_bound(traj.epochs.begin(), traj.epochs.end(), s);
  if (it == traj.epochs.begin()) return s;
  return s - *std::prev(it);
}

double DeltaDecomposition::total() const { return std::accumulate(segments.begin(), segments.end(), 0.0); }

DeltaDecomposition delta_decomposition(std::span<const LinkTrajectory> path, double t) {
  DeltaDecomposition d{t, {}};
  d.segments.reserve(path.size());
  double rewound = t;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const double seg = backward_recurrence(*it, rewound);
    d.segments.push_back(seg);
    rewound -= seg;
  }
  return d;
}

double recursive_age(std::span<const LinkTrajectory> path, double t) { return delta_decomposition(path, t).total(); }

GeneralAgeOracle::GeneralAgeOracle(const Network& net, std::span<const LinkTrajectory> trajectories)
    : net_(&net), epochs_(net.link_count()), rank_(net.link_count()), offset_(net.link_count() + 1, 0) {
  for (const LinkTrajectory& t : trajectories) {
    if (t.link >= net.link_count()) throw Error(ErrorKind::kTrajectoryFormat, "trajectory for unknown link");
    epochs_[t.link] = t.epochs;
  }
  for (std::size_t l = 0; l < net.link_count(); ++l) offset_[l + 1] = offset_[l] + epochs_[l].size();

  std::vector<std::size_t> order(net.link_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t l) {
    const Link& link = net.link(l);
    return std::tuple(net.depth(link.from), link.priority, l);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t r = 0; r < order.size(); ++r) rank_[order[r]] = static_cast<std::uint32_t>(r);
}

// Latest arrival into `node` ranked strictly before (time, rank). Equal-time
// epochs count only on links of lower rank; rank = max admits every epoch <= time.
std::optional<GeneralAgeOracle::Event> GeneralAgeOracle::latest_before(NodeId node, double time,
                                                                       std::uint32_t rank) const {
  std::optional<Event> best;
  for (std::size_t l : net_->incoming(node)) {
    const auto& e = epochs_[l];
    const auto end = rank_[l] < rank ? std::upper_bound(e.begin(), e.end(), time)
                                     : std::lower_bound(e.begin(), e.end(), time);
    if (end == e.begin()) continue;
    const auto idx = static_cast<std::size_t>(end - e.begin()) - 1;
    const Event cand{e[idx], rank_[l], l, offset_[l] + idx};
    if (!best || std::tie(cand.time, cand.rank) > std::tie(best->time, best->rank)) best = cand;
  }
  return best;
}

// Age of `node` at cut.time counting only arrivals ranked before `cut`.
double GeneralAgeOracle::age_before(NodeId node, const Event& cut) {
  const std::size_t nodes = net_->node_count();
  auto memo_key = [nodes](NodeId n, const Event& e) { return static_cast<std::uint64_t>(e.id) * nodes + n; };

  struct Frame {
    NodeId node;
    Event cut;
  };
  std::vector<Frame> stack{{node, cut}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    const auto key = memo_key(f.node, f.cut);
    if (f.node == kSource || memo_.contains(key)) {
      stack.pop_back();
      continue;
    }
    const auto last = latest_before(f.node, f.cut.time, f.cut.rank);
    if (!last) {
      memo_.emplace(key, f.cut.time);
      stack.pop_back();
      continue;
    }
    const NodeId sender = net_->link(last->link).from;
    const auto sender_key = memo_key(sender, *last);
    const auto self_key = memo_key(f.node, *last);
    const bool sender_done = sender == kSource || memo_.contains(sender_key);
    const bool self_done = memo_.contains(self_key);
    if (sender_done && self_done) {
      const double sender_age = sender == kSource ? 0.0 : memo_.at(sender_key);
      const double fresher = std::min(sender_age, memo_.at(self_key));
      memo_.emplace(key, fresher + (f.cut.time - last->time));
      stack.pop_back();
      continue;
    }
    if (!sender_done) stack.push_back({sender, *last});
    if (!self_done) stack.push_back({f.node, *last});
  }
  return node == kSource ? 0.0 : memo_.at(memo_key(node, cut));
}

double GeneralAgeOracle::age(NodeId node, double t) {
  if (node >= net_->node_count()) throw Error(ErrorKind::kUnknownNode, "node " + std::to_string(node));
  if (node == kSource) return 0.0;
  const auto last = latest_before(node, t, std::numeric_limits<std::uint32_t>::max());
  if (!last) return t;
  const NodeId sender = net_->link(last->link).from;
  const double fresher = std::min(age_before(sender, *last), age_before(node, *last));
  return fresher + (t - last->time);
}

double general_recursive_age(const Network& net, std::span<const LinkTrajectory> trajectories, NodeId node,
                             double t) {
  GeneralAgeOracle oracle(net, trajectories);
  return oracle.age(node, t);
}

}  // namespace aoi
