#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "areawalk/rng.hpp"
#include "areawalk/sticky.hpp"
#include "doctest.h"

namespace st = areawalk::sticky;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

st::Cluster particle(std::size_t i, std::size_t n, double x) {
  const double a = (static_cast<double>(n - i - 1) - static_cast<double>(i)) / static_cast<double>(n);
  return {i, i + 1, 1.0 / static_cast<double>(n), x, 0.0, a, 0.0};
}

}  // namespace

TEST_CASE("collision time of two clusters") {
  // n = 2, positions 0 and 1/2: gap 1/2 - t^2/2.
  const auto t = st::collision_time(particle(0, 2, 0.0), particle(1, 2, 0.5));
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(1.0));
  // Zero relative velocity: sqrt(2 dx / (mL + mR)).
  const auto l = particle(0, 4, 0.1);
  const auto r = particle(1, 4, 0.3);
  CHECK(*st::collision_time(l, r) == doctest::Approx(std::sqrt(2 * 0.2 / 0.5)));
  // Touching clusters meet at once; a tiny gap closes almost at once.
  CHECK(*st::collision_time(particle(0, 2, 0.2), particle(1, 2, 0.2)) == 0.0);
  CHECK(*st::collision_time(particle(0, 2, 0.2), particle(1, 2, 0.2 + 1e-12)) < 1e-5);
  // Separating clusters with no attraction never meet.
  st::Cluster a{0, 1, 0.5, 0.0, 0.0, 0.0, 0.0};
  st::Cluster b{1, 2, 0.5, 1.0, 1.0, 0.0, 0.0};
  CHECK_FALSE(st::collision_time(a, b).has_value());
  CHECK_THROWS_AS(st::collision_time(particle(1, 2, 0.0), particle(0, 2, 0.5)), std::invalid_argument);
}

TEST_CASE("initial accelerations follow the mass difference") {
  areawalk::RngStream rng(1, 0);
  const auto one = st::init_uniform(1, rng).clusters();
  REQUIRE(one.size() == 1);
  CHECK(one[0].acceleration == 0.0);
  const auto two = st::init_uniform(2, rng).clusters();
  CHECK(two[0].acceleration == 0.5);
  CHECK(two[1].acceleration == -0.5);
  const auto three = st::init_poisson(3, rng).clusters();
  CHECK(three[1].acceleration == 0.0);
  for (const auto& c : three) {
    CHECK(c.velocity == 0.0);
    CHECK(c.mass == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("Poisson initial positions have mean i/n") {
  const std::size_t n = 10;
  std::vector<double> mean(n, 0.0);
  const int reps = 20'000;
  for (int r = 0; r < reps; ++r) {
    areawalk::RngStream rng(4, r);
    const auto c = st::init_poisson(n, rng).clusters();
    for (std::size_t i = 0; i < n; ++i) {
      mean[i] += c[i].position / reps;
      if (i > 0) CHECK(c[i].position > c[i - 1].position);
    }
  }
  // sd of the mean of Gamma(i, n) is sqrt(i)/n/sqrt(reps).
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = (i + 1.0) / n;
    CHECK(std::abs(mean[i] - expected) <= 5 * std::sqrt(i + 1.0) / n / std::sqrt(1.0 * reps));
  }
}

TEST_CASE("two particles merge once, symmetrically") {
  auto sys = st::System::from_positions({0.0, 0.5});
  sys.simulate(0.5);
  CHECK(sys.cluster_count() == 2);
  CHECK(sys.time() == 0.5);
  sys.simulate();
  REQUIRE(sys.merge_log().size() == 1);
  const auto& m = sys.merge_log()[0];
  CHECK(m.time == doctest::Approx(1.0));
  CHECK(m.position == doctest::Approx(0.25));
  CHECK(m.left_size == 1);
  CHECK(m.right_size == 1);
  const auto c = sys.clusters();
  REQUIRE(c.size() == 1);
  CHECK(c[0].velocity == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c[0].acceleration == 0.0);
  CHECK(sys.clusters_at(0.999) == 2);
  CHECK(sys.clusters_at(1.001) == 1);
  CHECK(sys.check_invariants().ok());
  CHECK(sys.merge_log_csv().rfind("time,left_size,right_size,position\n", 0) == 0);
}

TEST_CASE("single particle never merges") {
  auto sys = st::System::from_positions({0.3});
  sys.simulate();
  CHECK(sys.merge_log().empty());
  CHECK(sys.clusters_at(0.0) == 1);
  CHECK(sys.clusters_at(100.0) == 1);
  CHECK(sys.check_invariants().ok());
}

TEST_CASE("simultaneous collisions become consecutive binary merges") {
  // Equally spaced triple: both gaps close at t = sqrt(3).
  auto sys = st::System::from_positions({0.0, 1.0, 2.0});
  sys.simulate(kInf, true);
  REQUIRE(sys.merge_log().size() == 2);
  CHECK(sys.merge_log()[0].time == doctest::Approx(std::sqrt(3.0)));
  CHECK(sys.merge_log()[1].time == doctest::Approx(std::sqrt(3.0)));
  CHECK(sys.merge_log()[0].left_index == 0);
  CHECK(sys.merge_log()[1].left_size == 2);
  const auto c = sys.clusters();
  REQUIRE(c.size() == 1);
  CHECK(c[0].position == doctest::Approx(1.0));
  CHECK(std::abs(c[0].velocity) < 1e-12);
}

TEST_CASE("coincident positions merge at time zero") {
  auto sys = st::System::from_positions({0.0, 0.4, 0.4, 1.0});
  sys.simulate(0.0);
  REQUIRE(sys.merge_log().size() == 1);
  CHECK(sys.merge_log()[0].time == 0.0);
  CHECK(sys.cluster_count() == 3);
  sys.simulate();
  CHECK(sys.check_invariants().ok());
  CHECK_THROWS_AS(st::System::from_positions({0.5, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(st::System::from_positions({}), std::invalid_argument);
}

TEST_CASE("random systems keep every invariant, checked after each event") {
  for (auto model : {st::InitModel::uniform, st::InitModel::poisson}) {
    for (std::uint64_t r = 0; r < 5; ++r) {
      areawalk::RngStream rng(99, r);
      auto sys = st::init_system(model, 300, rng);
      const double com = sys.center_of_mass();
      sys.simulate(0.4, true);
      CHECK(sys.check_invariants().ok());
      CHECK(std::abs(sys.center_of_mass() - com) < 1e-12);
      const std::size_t mid = sys.cluster_count();
      sys.simulate(kInf, true);
      const auto inv = sys.check_invariants();
      CHECK_MESSAGE(inv.ok(), inv.describe());
      CHECK(sys.merge_log().size() == 299);
      CHECK(sys.clusters_at(0.0) == 300);
      CHECK(sys.clusters_at(0.4) == mid);
      std::size_t last = 300;
      for (double t = 0.0; t < 2.0; t += 0.01) {
        CHECK(sys.clusters_at(t) <= last);
        last = sys.clusters_at(t);
      }
    }
  }
}

TEST_CASE("K curves: reproducible, starting at 1 and following 1 - t^2") {
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0, 1.2};
  const auto a = st::K_curve(3000, st::InitModel::uniform, grid, 4, 17, 1);
  const auto b = st::K_curve(3000, st::InitModel::uniform, grid, 4, 17, 3);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.all_invariants_ok());
  CHECK(a.mean.points()[0].value == 1.0);
  CHECK(a.stddev[0] == 0.0);
  for (std::size_t i = 1; i < 4; ++i) {
    const double t = grid[i];
    CHECK(std::abs(a.mean.points()[i].value - (1.0 - t * t)) < 0.04);
  }
  CHECK(a.mean.points()[5].value < 0.01);
  CHECK(a.to_csv().rfind("t,mean,stddev,n,replicates,model,seed\n", 0) == 0);
  const auto p = st::K_curve(3000, st::InitModel::poisson, grid, 4, 17);
  CHECK(std::abs(p.mean.points()[2].value - 0.75) < 0.04);
  CHECK_THROWS_AS(st::K_curve(10, st::InitModel::uniform, std::vector<double>{0.5, 0.2}, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(st::K_curve(10, st::InitModel::uniform, std::vector<double>{}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(st::K_curve(10, st::InitModel::uniform, grid, 0, 1), std::invalid_argument);
  CHECK(st::parse_init_model("poisson") == st::InitModel::poisson);
  CHECK_THROWS_AS(st::parse_init_model("gauss"), std::invalid_argument);
}
