#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <queue>
#include <span>
#include <vector>

#include "aoi/rng.hpp"
#include "aoi/topology.hpp"

namespace aoi {

/// Renewal epochs of one link, nondecreasing.
struct LinkTrajectory {
  std::size_t link = 0;
  std::vector<double> epochs;
};

/// N(t): number of epochs <= t.
std::size_t renewal_count(const LinkTrajectory& traj, double t);

struct SimSnapshot {
  double time = 0.0;
  std::vector<double> ages;                   // indexed by node; ages[0] == 0
  std::vector<LinkTrajectory> trajectories;  // one per link when recorded, else empty
};

struct Arrival {
  double time;
  std::size_t link;
};

/// Forward event simulation of the superposed per-link renewal processes.
///
/// Every link keeps exactly one pending arrival. On an arrival over (i, j) at
/// time t, node j keeps the fresher of its cached packet and i's packet:
/// u_j <- max(u_j, u_i), with u_0 = t. Age is X_j = now - u_j.
///
/// Arrivals sharing a timestamp are applied one at a time in ascending
/// (sender depth, link priority, link index) order, each seeing the state left
/// by the previous ones. Gaps on link l come from RngStream(substream_seed(seed, l)).
///
/// The Network must outlive the simulator.
class Simulator {
 public:
  Simulator(const Network& net, std::uint64_t seed, bool record = false);

  /// Replays fixed epochs instead of sampling; `recorded[k].link` selects the
  /// link, links without an entry never fire. Epochs must be nondecreasing.
  Simulator(const Network& net, std::span<const LinkTrajectory> recorded);

  double now() const noexcept { return now_; }

  /// Time of the next arrival, +inf if none is left (replay only).
  double next_arrival_time() const;

  /// Applies the next arrival and moves the clock to its time.
  Arrival step();

  /// Applies every arrival with time <= t and moves the clock to t (t >= now()).
  void advance_to(double t);

  double generation_time(NodeId node) const { return node == kSource ? now_ : generation_.at(node); }
  double age(NodeId node) const { return now_ - generation_time(node); }
  std::vector<double> ages() const;

  /// Epochs processed so far (record mode or replay), one entry per link.
  std::vector<LinkTrajectory> trajectories() const;

 private:
  struct Pending {
    double time;
    std::uint32_t rank;
    std::size_t link;
    bool operator>(const Pending& o) const { return time != o.time ? time > o.time : rank > o.rank; }
  };

  void init_order();
  void schedule(std::size_t link, double from_time);
  const Pending* peek() const;  // nullptr when nothing is pending
  void apply(const Pending& ev);

  // Small networks keep pending arrivals in a flat array indexed by link and
  // scan it; larger ones use a binary heap. Both yield the same order.
  static constexpr std::size_t kScanLimit = 32;

  const Network* net_;
  bool replay_ = false;
  bool record_ = false;
  double now_ = 0.0;
  std::vector<double> generation_;
  std::vector<std::uint32_t> rank_;
  std::vector<RngStream> streams_;
  std::vector<std::span<const double>> replay_epochs_;
  std::vector<std::size_t> replay_pos_;
  std::vector<std::vector<double>> recorded_;
  bool use_heap_ = false;
  std::vector<Pending> pending_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
};

/// Runs to horizon T (arrivals at exactly T included) and returns all ages.
SimSnapshot simulate(const Network& net, double horizon, std::uint64_t seed, bool record_trajectories = false);

/// Age of one node at T; identical to simulate(net, T, seed).ages[node].
double age_at(const Network& net, double horizon, std::uint64_t seed, NodeId node);

/// Ages of all nodes at each sample time, evaluated right-continuously
/// (arrivals at a sample instant are applied first). result[k][node].
/// Throws Error(kUnsortedSampleTimes) for unsorted times, kInvalidParameter
/// for times outside [0, T].
std::vector<std::vector<double>> age_trajectory(const Network& net, double horizon, std::uint64_t seed,
                                                std::span<const double> sample_times);

/// CSV "link_from,link_to,epoch", one row per arrival ordered by epoch,
/// %.17g floats.
void write_trajectory_csv(std::ostream& out, const Network& net, std::span<const LinkTrajectory> trajectories);

/// Inverse of write_trajectory_csv. Throws Error(kTrajectoryFormat) on a bad
/// header, unknown or ambiguous link, non-numeric or negative epoch, or rows
/// out of epoch order.
std::vector<LinkTrajectory> read_trajectory_csv(std::istream& in, const Network& net);

}  // namespace aoi
