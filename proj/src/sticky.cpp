#include "areawalk/sticky.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "areawalk/errors.hpp"
#include "areawalk/parallel.hpp"

namespace areawalk::sticky {

namespace {

constexpr double kContactTolerance = 1e-9;

}  // namespace

std::optional<double> collision_time(const Cluster& left, const Cluster& right) {
  if (left.time != right.time) throw std::invalid_argument("collision_time: clusters refer to different times");
  if (left.hi > right.lo) throw std::invalid_argument("collision_time: clusters are not ordered left to right");
  const double dx = right.position - left.position;
  const double dv = right.velocity - left.velocity;
  const double da = right.acceleration - left.acceleration;
  if (dx <= 0.0) return 0.0;
  if (da == 0.0) {
    if (dv < 0.0) return -dx / dv;
    return std::nullopt;
  }
  const double disc = dv * dv - 2.0 * da * dx;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  if (da < 0.0) {
    // Exactly one positive root; pick the form without cancellation.
    if (dv >= 0.0) return (dv + root) / -da;
    return 2.0 * dx / (root - dv);
  }
  // da > 0: the gap closes only if it is shrinking, at the smaller root.
  if (dv >= 0.0) return std::nullopt;
  return 2.0 * dx / (root - dv);
}

std::string InvariantReport::describe() const {
  return fmt::format("mass={} com={} (drift {:.3g}) monotone={} merges={} ({}) acceleration={} ordering={}",
                     mass_ok, com_ok, com_drift, monotone_ok, merges_ok, merges, acceleration_ok, ordering_ok);
}

System System::from_positions(std::vector<double> positions) {
  if (positions.empty()) throw std::invalid_argument("System: need at least one particle");
  if (positions.size() >= kNone) throw std::invalid_argument("System: too many particles");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(positions[i])) throw std::invalid_argument("System: non-finite position");
    if (i > 0 && positions[i] < positions[i - 1]) throw std::invalid_argument("System: positions must be sorted");
  }
  System s;
  s.n_ = positions.size();
  s.alive_ = s.n_;
  s.nodes_.resize(s.n_);
  const double mass = 1.0 / static_cast<double>(s.n_);
  double com = 0.0;
  for (std::size_t i = 0; i < s.n_; ++i) {
    auto& node = s.nodes_[i];
    node.c = Cluster{i, i + 1, mass, positions[i], 0.0, s.acceleration_for(i, i + 1), 0.0};
    node.prev = i == 0 ? kNone : static_cast<std::uint32_t>(i - 1);
    node.next = i + 1 == s.n_ ? kNone : static_cast<std::uint32_t>(i + 1);
    com += positions[i];
  }
  s.com0_ = com / static_cast<double>(s.n_);
  s.head_ = 0;
  for (std::size_t i = 0; i + 1 < s.n_; ++i) {
    s.schedule(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1));
  }
  return s;
}

double System::acceleration_for(std::size_t lo, std::size_t hi) const {
  // (mass right) - (mass left) = ((n - hi) - lo) / n
  return (static_cast<double>(n_ - hi) - static_cast<double>(lo)) / static_cast<double>(n_);
}

std::vector<Cluster> System::clusters() const {
  std::vector<Cluster> out;
  out.reserve(alive_);
  for (auto i = head_; i != kNone; i = nodes_[i].next) {
    Cluster c = nodes_[i].c;
    c.position = c.position_at(time_);
    c.velocity = c.velocity_at(time_);
    c.time = time_;
    out.push_back(c);
  }
  return out;
}

double System::center_of_mass() const {
  double sum = 0.0;
  for (auto i = head_; i != kNone; i = nodes_[i].next) {
    const auto& c = nodes_[i].c;
    sum += static_cast<double>(c.members()) * c.position_at(time_);
  }
  return sum / static_cast<double>(n_);
}

void System::schedule(std::uint32_t left, std::uint32_t right) {
  Cluster l = nodes_[left].c;
  Cluster r = nodes_[right].c;
  for (Cluster* c : {&l, &r}) {
    c->position = c->position_at(time_);
    c->velocity = c->velocity_at(time_);
    c->time = time_;
  }
  const auto tau = collision_time(l, r);
  if (!tau) return;
  heap_.push_back({time_ + *tau, l.lo, left, right, nodes_[left].version, nodes_[right].version});
  std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
}

std::string System::dump(std::uint32_t a, std::uint32_t b, double t) const {
  std::string out = fmt::format("state at t = {:.17g}, {} clusters:", t, alive_);
  for (auto i : {a, b}) {
    if (i == kNone) continue;
    const auto& c = nodes_[i].c;
    out += fmt::format(" [particles {}..{} x={:.17g} v={:.17g} a={:.17g} (stored at t={:.17g})]", c.lo, c.hi - 1,
                       c.position_at(t), c.velocity_at(t), c.acceleration, c.time);
  }
  return out;
}

void System::merge(const CollisionEvent& e) {
  auto& L = nodes_[e.left];
  auto& R = nodes_[e.right];
  const double t = e.time;
  const double xl = L.c.position_at(t);
  const double xr = R.c.position_at(t);
  if (std::abs(xl - xr) > kContactTolerance) {
    throw SimulationError(fmt::format("contact points differ by {:.3g}; {}", xl - xr, dump(e.left, e.right, t)));
  }
  const auto cl = static_cast<double>(L.c.members());
  const auto cr = static_cast<double>(R.c.members());
  const double v = (cl * L.c.velocity_at(t) + cr * R.c.velocity_at(t)) / (cl + cr);

  log_.push_back({t, L.c.lo, R.c.lo, L.c.members(), R.c.members(), xl});

  L.c.hi = R.c.hi;
  L.c.mass = static_cast<double>(L.c.members()) / static_cast<double>(n_);
  L.c.position = xl;
  L.c.velocity = v;
  L.c.acceleration = acceleration_for(L.c.lo, L.c.hi);
  L.c.time = t;
  ++L.version;
  R.alive = false;
  ++R.version;
  L.next = R.next;
  if (R.next != kNone) nodes_[R.next].prev = e.left;
  --alive_;
  time_ = std::max(time_, t);

  for (auto nb : {L.prev, L.next}) {
    if (nb == kNone) continue;
    const double xn = nodes_[nb].c.position_at(t);
    const bool ordered = nb == L.prev ? xn <= xl + kContactTolerance : xn >= xl - kContactTolerance;
    if (!ordered) throw SimulationError("cluster order broken after merge; " + dump(e.left, nb, t));
  }
  if (L.prev != kNone) schedule(L.prev, e.left);
  if (L.next != kNone) schedule(e.left, L.next);
}

void System::verify_all(double t) const {
  std::size_t left_count = 0;
  double last = -std::numeric_limits<double>::infinity();
  std::uint32_t last_id = kNone;
  for (auto i = head_; i != kNone; i = nodes_[i].next) {
    const auto& c = nodes_[i].c;
    if (c.lo != left_count) throw SimulationError("particle ranges are not contiguous; " + dump(last_id, i, t));
    const std::size_t right_count = n_ - left_count - c.members();
    const double expected = (static_cast<double>(right_count) - static_cast<double>(left_count)) /
                            static_cast<double>(n_);
    if (c.acceleration != expected) throw SimulationError("acceleration law violated; " + dump(i, kNone, t));
    const double x = c.position_at(t);
    if (x < last - kContactTolerance) throw SimulationError("cluster order broken; " + dump(last_id, i, t));
    last = x;
    last_id = i;
    left_count += c.members();
  }
}

void System::simulate(double t_end, bool verify_each_event) {
  if (!(t_end >= 0.0)) throw std::invalid_argument("simulate: t_end must be >= 0");
  while (!heap_.empty() && heap_.front().time <= t_end) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    const CollisionEvent e = heap_.back();
    heap_.pop_back();
    const auto& l = nodes_[e.left];
    const auto& r = nodes_[e.right];
    if (!l.alive || !r.alive || l.version != e.left_version || r.version != e.right_version) continue;
    merge(e);
    if (verify_each_event) verify_all(e.time);
  }
  if (std::isfinite(t_end)) time_ = std::max(time_, t_end);
}

std::size_t System::clusters_at(double t) const {
  const auto merged = std::upper_bound(log_.begin(), log_.end(), t,
                                       [](double v, const MergeRecord& m) { return v < m.time; }) -
                      log_.begin();
  return n_ - static_cast<std::size_t>(merged);
}

InvariantReport System::check_invariants(double com_tolerance) const {
  InvariantReport r;
  std::size_t total = 0;
  bool contiguous = true;
  bool accel = true;
  bool ordered = true;
  double last = -std::numeric_limits<double>::infinity();
  for (auto i = head_; i != kNone; i = nodes_[i].next) {
    const auto& c = nodes_[i].c;
    contiguous = contiguous && c.lo == total;
    const std::size_t right = n_ - total - c.members();
    accel = accel && c.acceleration == (static_cast<double>(right) - static_cast<double>(total)) /
                                           static_cast<double>(n_);
    const double x = c.position_at(time_);
    ordered = ordered && x >= last - kContactTolerance;
    last = x;
    total += c.members();
  }
  r.mass_ok = contiguous && total == n_;
  r.com_drift = std::abs(center_of_mass() - com0_);
  r.com_ok = r.com_drift <= com_tolerance;
  r.monotone_ok = std::is_sorted(log_.begin(), log_.end(),
                                 [](const MergeRecord& a, const MergeRecord& b) { return a.time < b.time; });
  r.merges = log_.size();
  r.merges_ok = log_.size() + alive_ == n_;
  r.acceleration_ok = accel;
  r.ordering_ok = ordered;
  return r;
}

std::string System::merge_log_csv() const {
  std::string out = "time,left_size,right_size,position\n";
  for (const auto& m : log_) {
    out += fmt::format("{},{},{},{}\n", format_real(m.time), m.left_size, m.right_size, format_real(m.position));
  }
  return out;
}

std::string_view to_string(InitModel m) { return m == InitModel::uniform ? "uniform" : "poisson"; }

InitModel parse_init_model(std::string_view s) {
  if (s == "uniform") return InitModel::uniform;
  if (s == "poisson") return InitModel::poisson;
  throw std::invalid_argument(fmt::format("unknown model '{}' (expected uniform or poisson)", s));
}

System init_uniform(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("init_uniform: n must be >= 1");
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform();
  std::sort(x.begin(), x.end());
  return System::from_positions(std::move(x));
}

System init_poisson(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("init_poisson: n must be >= 1");
  std::vector<double> x(n);
  double s = 0.0;
  const double rate = static_cast<double>(n);
  for (auto& v : x) {
    s += rng.exponential() / rate;
    v = s;
  }
  return System::from_positions(std::move(x));
}

System init_system(InitModel model, std::size_t n, RngStream& rng) {
  return model == InitModel::uniform ? init_uniform(n, rng) : init_poisson(n, rng);
}

bool KCurve::all_invariants_ok() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const InvariantReport& r) { return r.ok(); });
}

std::string KCurve::to_csv() const {
  std::string out = "t,mean,stddev,n,replicates,model,seed\n";
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const auto& p = mean.points()[i];
    out += fmt::format("{},{},{},{},{},{},{}\n", format_real(p.t), format_real(p.value), format_real(stddev[i]), n,
                       replicates, to_string(model), seed);
  }
  return out;
}

KCurve K_curve(std::size_t n, InitModel model, std::span<const double> t_grid, std::size_t replicates,
               std::uint64_t seed, unsigned threads, bool verify_each_event) {
  if (n == 0) throw std::invalid_argument("K_curve: n must be >= 1");
  if (replicates == 0) throw std::invalid_argument("K_curve: replicates must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("K_curve: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0) throw std::invalid_argument("K_curve: invalid t in grid");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("K_curve: t grid must increase");
  }
  const std::uint64_t stream_seed = derive_seed(seed, model == InitModel::uniform ? 0x756e6966ULL : 0x706f6973ULL);

  std::vector<std::vector<double>> fractions(replicates, std::vector<double>(t_grid.size()));
  std::vector<InvariantReport> reports(replicates);
  parallel_reduce<int>(
      replicates, threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) {
          RngStream rng(stream_seed, r);
          System sys = init_system(model, n, rng);
          sys.simulate(std::numeric_limits<double>::infinity(), verify_each_event);
          reports[r] = sys.check_invariants();
          reports[r].merges_ok = reports[r].merges_ok && sys.cluster_count() == 1;
          for (std::size_t i = 0; i < t_grid.size(); ++i) {
            fractions[r][i] = static_cast<double>(sys.clusters_at(t_grid[i])) / static_cast<double>(n);
          }
        }
        return 0;
      },
      [](int&, int) {});

  KCurve k;
  k.n = n;
  k.replicates = replicates;
  k.model = model;
  k.seed = seed;
  k.invariants = std::move(reports);
  k.mean = Curve(fmt::format("K_{}/n {}", n, to_string(model)), {});
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    double sum = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) sum += fractions[r][i];
    const double mean = sum / static_cast<double>(replicates);
    double ss = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) ss += (fractions[r][i] - mean) * (fractions[r][i] - mean);
    k.mean.push_back({t_grid[i], mean});
    k.stddev.push_back(replicates > 1 ? std::sqrt(ss / static_cast<double>(replicates - 1)) : 0.0);
  }
  return k;
}

}  // namespace areawalk::sticky
