#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "areawalk/curve.hpp"
#include "areawalk/rng.hpp"

namespace areawalk::sticky {

/// A cluster of the particles lo..hi-1 (0-based, left to right). Position and
/// velocity refer to `time`; the cluster moves on a parabola in between.
struct Cluster {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double mass = 0.0;
  double position = 0.0;
  double velocity = 0.0;
  double acceleration = 0.0;
  double time = 0.0;

  [[nodiscard]] std::size_t members() const { return hi - lo; }
  [[nodiscard]] double position_at(double t) const {
    const double d = t - time;
    return position + velocity * d + 0.5 * acceleration * d * d;
  }
  [[nodiscard]] double velocity_at(double t) const { return velocity + acceleration * (t - time); }
};

/// Time until the gap between two clusters closes, measured from their common
/// `time`. Coincident or overlapping clusters meet immediately (0). Empty when
/// the gap never closes, which cannot happen for adjacent clusters of one
/// system. Throws std::invalid_argument if the clusters refer to different
/// times or are not ordered by their particle ranges.
std::optional<double> collision_time(const Cluster& left, const Cluster& right);

struct MergeRecord {
  double time = 0.0;
  std::size_t left_index = 0;   // first particle of the left cluster
  std::size_t right_index = 0;  // first particle of the right cluster
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  double position = 0.0;
};

/// A scheduled collision; valid only while both version counters match.
struct CollisionEvent {
  double time = 0.0;
  std::size_t left_lo = 0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::uint64_t left_version = 0;
  std::uint64_t right_version = 0;

  /// Earlier first; equal times go left to right.
  bool operator>(const CollisionEvent& o) const {
    return time != o.time ? time > o.time : left_lo > o.left_lo;
  }
};

struct InvariantReport {
  bool mass_ok = false;          // member counts add up to n
  bool com_ok = false;           // centre of mass drift <= tolerance
  bool monotone_ok = false;      // merge times non-decreasing, so K_n(t) is non-increasing
  bool merges_ok = false;        // n - 1 merges on a run to completion
  bool acceleration_ok = false;  // a = right mass - left mass for every cluster
  bool ordering_ok = false;      // positions non-decreasing at the current time
  double com_drift = 0.0;
  std::size_t merges = 0;

  [[nodiscard]] bool ok() const {
    return mass_ok && com_ok && monotone_ok && merges_ok && acceleration_ok && ordering_ok;
  }
  [[nodiscard]] std::string describe() const;
};

/// The sticky particle system: n unit particles of mass 1/n, initially at
/// rest, attracting each other with force equal to the product of masses, so
/// each cluster accelerates by (mass to its right) - (mass to its left).
/// Colliding clusters merge, conserving mass and momentum.
class System {
 public:
  /// Particles at the given non-decreasing positions.
  static System from_positions(std::vector<double> positions);

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] double time() const { return time_; }
  [[nodiscard]] std::size_t cluster_count() const { return alive_; }
  [[nodiscard]] const std::vector<MergeRecord>& merge_log() const { return log_; }

  /// Clusters left to right, advanced to the current time.
  [[nodiscard]] std::vector<Cluster> clusters() const;
  [[nodiscard]] double center_of_mass() const;
  [[nodiscard]] double initial_center_of_mass() const { return com0_; }

  /// Processes every collision up to t_end (infinity runs to a single
  /// cluster). With `verify_each_event` the acceleration law and ordering of
  /// the whole system are rechecked after every merge (O(n) per event).
  /// Throws SimulationError, with a dump of the offending clusters, when the
  /// contact points of a colliding pair disagree by more than 1e-9 or the
  /// ordering breaks.
  void simulate(double t_end = std::numeric_limits<double>::infinity(), bool verify_each_event = false);

  /// Number of clusters at time t, read off the merge log.
  [[nodiscard]] std::size_t clusters_at(double t) const;

  [[nodiscard]] InvariantReport check_invariants(double com_tolerance = 1e-9) const;

  /// Merge log as CSV with header time,left_size,right_size,position.
  [[nodiscard]] std::string merge_log_csv() const;

 private:
  struct Node {
    Cluster c;
    std::uint64_t version = 0;
    std::uint32_t prev = kNone;
    std::uint32_t next = kNone;
    bool alive = true;
  };
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  void schedule(std::uint32_t left, std::uint32_t right);
  void merge(const CollisionEvent& e);
  void verify_all(double t) const;
  [[nodiscard]] double acceleration_for(std::size_t lo, std::size_t hi) const;
  [[nodiscard]] std::string dump(std::uint32_t a, std::uint32_t b, double t) const;

  std::size_t n_ = 0;
  std::size_t alive_ = 0;
  double time_ = 0.0;
  double com0_ = 0.0;
  std::uint32_t head_ = kNone;
  std::vector<Node> nodes_;
  std::vector<CollisionEvent> heap_;
  std::vector<MergeRecord> log_;
};

enum class InitModel { uniform, poisson };
std::string_view to_string(InitModel m);
InitModel parse_init_model(std::string_view s);

/// n sorted uniform positions on [0, 1].
System init_uniform(std::size_t n, RngStream& rng);
/// The first n points of a Poisson process with intensity n.
System init_poisson(std::size_t n, RngStream& rng);
System init_system(InitModel model, std::size_t n, RngStream& rng);

struct KCurve {
  Curve mean;                  // mean of K_n(t)/n over replicates
  std::vector<double> stddev;  // sample standard deviation across replicates
  std::size_t n = 0;
  std::size_t replicates = 0;
  InitModel model = InitModel::uniform;
  std::uint64_t seed = 0;
  std::vector<InvariantReport> invariants;  // one per replicate

  [[nodiscard]] bool all_invariants_ok() const;
  /// Header t,mean,stddev,n,replicates,model,seed.
  [[nodiscard]] std::string to_csv() const;
};

/// Replicate r starts from RngStream(derive_seed(seed, model), r) and is run
/// to a single cluster; the grid must be finite, non-negative and strictly
/// increasing.
KCurve K_curve(std::size_t n, InitModel model, std::span<const double> t_grid, std::size_t replicates,
               std::uint64_t seed, unsigned threads = 1, bool verify_each_event = false);

}  // namespace areawalk::sticky
