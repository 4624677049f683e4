#include "aoi/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>

#include "aoi/error.hpp"
#include "aoi/format.hpp"

namespace aoi {

std::size_t renewal_count(const LinkTrajectory& traj, double t) {
  return static_cast<std::size_t>(std::upper_bound(traj.epochs.begin(), traj.epochs.end(), t) - traj.epochs.begin());
}

Simulator::Simulator(const Network& net, std::uint64_t seed, bool record)
    : net_(&net), record_(record), generation_(net.node_count(), 0.0) {
  init_order();
  streams_.reserve(net.link_count());
  for (std::size_t l = 0; l < net.link_count(); ++l) streams_.emplace_back(substream_seed(seed, l));
  if (record_) recorded_.resize(net.link_count());
  for (std::size_t l = 0; l < net.link_count(); ++l) schedule(l, 0.0);
}

Simulator::Simulator(const Network& net, std::span<const LinkTrajectory> recorded)
    : net_(&net),
      replay_(true),
      record_(true),
      generation_(net.node_count(), 0.0),
      replay_epochs_(net.link_count()),
      replay_pos_(net.link_count(), 0),
      recorded_(net.link_count()) {
  init_order();
  for (const LinkTrajectory& t : recorded) {
    if (t.link >= net.link_count()) throw Error(ErrorKind::kTrajectoryFormat, "trajectory for unknown link");
    if (!std::is_sorted(t.epochs.begin(), t.epochs.end())) {
      throw Error(ErrorKind::kTrajectoryFormat, "epochs out of order on link " + std::to_string(t.link));
    }
    replay_epochs_[t.link] = t.epochs;
  }
  for (std::size_t l = 0; l < net.link_count(); ++l) schedule(l, 0.0);
}

void Simulator::init_order() {
  const auto links = net_->links();
  use_heap_ = links.size() > kScanLimit;
  if (!use_heap_) pending_.assign(links.size(), Pending{std::numeric_limits<double>::infinity(), 0, 0});
  std::vector<std::size_t> order(links.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t l) { return std::tuple(net_->depth(links[l].from), links[l].priority, l); };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
  rank_.resize(links.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank_[order[r]] = static_cast<std::uint32_t>(r);
}

void Simulator::schedule(std::size_t link, double from_time) {
  double next = 0.0;
  if (replay_) {
    auto& pos = replay_pos_[link];
    next = pos < replay_epochs_[link].size() ? replay_epochs_[link][pos++] : std::numeric_limits<double>::infinity();
  } else {
    next = from_time + sample(net_->links()[link].dist, streams_[link]);
  }
  if (!use_heap_) {
    pending_[link] = Pending{next, rank_[link], link};
  } else if (next != std::numeric_limits<double>::infinity()) {
    queue_.push(Pending{next, rank_[link], link});
  }
}

const Simulator::Pending* Simulator::peek() const {
  if (use_heap_) return queue_.empty() ? nullptr : &queue_.top();
  const Pending* best = nullptr;
  for (const Pending& p : pending_) {
    if (!best || best->time > p.time || (best->time == p.time && best->rank > p.rank)) best = &p;
  }
  return best == nullptr || best->time == std::numeric_limits<double>::infinity() ? nullptr : best;
}

double Simulator::next_arrival_time() const {
  const Pending* p = peek();
  return p ? p->time : std::numeric_limits<double>::infinity();
}

void Simulator::apply(const Pending& ev) {
  if (use_heap_) queue_.pop();
  now_ = ev.time;
  const Link& l = net_->links()[ev.link];
  const double delivered = l.from == kSource ? now_ : generation_[l.from];
  generation_[l.to] = std::max(generation_[l.to], delivered);
  if (record_) recorded_[ev.link].push_back(ev.time);
  schedule(ev.link, ev.time);
}

Arrival Simulator::step() {
  const Pending* p = peek();
  if (!p) throw Error(ErrorKind::kInvalidParameter, "no pending arrival");
  const Pending ev = *p;
  apply(ev);
  return Arrival{ev.time, ev.link};
}

void Simulator::advance_to(double t) {
  for (const Pending* p = peek(); p && p->time <= t; p = peek()) apply(Pending(*p));
  now_ = std::max(now_, t);
}

std::vector<double> Simulator::ages() const {
  std::vector<double> out(generation_.size());
  for (NodeId n = 0; n < out.size(); ++n) out[n] = age(n);
  return out;
}

std::vector<LinkTrajectory> Simulator::trajectories() const {
  std::vector<LinkTrajectory> out;
  out.reserve(recorded_.size());
  for (std::size_t l = 0; l < recorded_.size(); ++l) out.push_back(LinkTrajectory{l, recorded_[l]});
  return out;
}

SimSnapshot simulate(const Network& net, double horizon, std::uint64_t seed, bool record_trajectories) {
  if (!(horizon > 0.0)) throw Error(ErrorKind::kInvalidParameter, "horizon must be positive");
  Simulator sim(net, seed, record_trajectories);
  sim.advance_to(horizon);
  SimSnapshot snap{horizon, sim.ages(), {}};
  if (record_trajectories) snap.trajectories = sim.trajectories();
  return snap;
}

double age_at(const Network& net, double horizon, std::uint64_t seed, NodeId node) {
  if (node >= net.node_count()) throw Error(ErrorKind::kUnknownNode, "node " + std::to_string(node));
  if (!(horizon > 0.0)) throw Error(ErrorKind::kInvalidParameter, "horizon must be positive");
  if (node == kSource) return 0.0;
  Simulator sim(net, seed);
  sim.advance_to(horizon);
  return sim.age(node);
}

std::vector<std::vector<double>> age_trajectory(const Network& net, double horizon, std::uint64_t seed,
                                                std::span<const double> sample_times) {
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw Error(ErrorKind::kUnsortedSampleTimes, "sample times must be nondecreasing");
  }
  for (double t : sample_times) {
    if (!(t >= 0.0 && t <= horizon)) {
      throw Error(ErrorKind::kInvalidParameter, "sample time " + format_double(t) + " outside [0, T]");
    }
  }
  Simulator sim(net, seed);
  std::vector<std::vector<double>> out;
  out.reserve(sample_times.size());
  for (double t : sample_times) {
    sim.advance_to(t);
    out.push_back(sim.ages());
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const Network& net, std::span<const LinkTrajectory> trajectories) {
  struct Row {
    double epoch;
    std::size_t link;
  };
  std::vector<Row> rows;
  for (const auto& t : trajectories) {
    for (double e : t.epochs) rows.push_back(Row{e, t.link});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.epoch < b.epoch; });
  out << "link_from,link_to,epoch\n";
  for (const Row& r : rows) {
    const Link& l = net.link(r.link);
    out << l.from << ',' << l.to << ',' << format_double17(r.epoch) << '\n';
  }
}

std::vector<LinkTrajectory> read_trajectory_csv(std::istream& in, const Network& net) {
  auto fail = [](std::size_t line, const std::string& what) -> Error {
    return Error(ErrorKind::kTrajectoryFormat, "line " + std::to_string(line) + ": " + what);
  };
  std::map<std::pair<NodeId, NodeId>, std::size_t> by_pair;
  std::map<std::pair<NodeId, NodeId>, int> multiplicity;
  for (std::size_t l = 0; l < net.link_count(); ++l) {
    const auto key = std::pair(net.link(l).from, net.link(l).to);
    by_pair[key] = l;
    ++multiplicity[key];
  }

  std::string line;
  if (!std::getline(in, line) || line != "link_from,link_to,epoch") {
    throw fail(1, "expected header link_from,link_to,epoch");
  }
  std::vector<LinkTrajectory> out(net.link_count());
  for (std::size_t l = 0; l < out.size(); ++l) out[l].link = l;

  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw fail(lineno, "expected three columns");
    const char* begin = line.data();
    NodeId from = 0;
    NodeId to = 0;
    double epoch = 0.0;
    auto r1 = std::from_chars(begin, begin + c1, from);
    auto r2 = std::from_chars(begin + c1 + 1, begin + c2, to);
    auto r3 = std::from_chars(begin + c2 + 1, begin + line.size(), epoch);
    if (r1.ec != std::errc{} || r1.ptr != begin + c1 || r2.ec != std::errc{} || r2.ptr != begin + c2 ||
        r3.ec != std::errc{} || r3.ptr != begin + line.size()) {
      throw fail(lineno, "malformed row \"" + line + "\"");
    }
    if (!std::isfinite(epoch) || epoch < 0.0) throw fail(lineno, "epoch must be finite and nonnegative");
    if (epoch < previous) throw fail(lineno, "epoch out of order");
    previous = epoch;
    const auto key = std::pair(from, to);
    auto it = by_pair.find(key);
    if (it == by_pair.end()) throw fail(lineno, "no link (" + std::to_string(from) + "," + std::to_string(to) + ")");
    if (multiplicity[key] > 1) throw fail(lineno, "parallel links cannot be told apart in a trajectory file");
    out[it->second].epochs.push_back(epoch);
  }
  return out;
}

}  // namespace aoi
