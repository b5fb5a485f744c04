// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "areawalk/closedform.hpp"
#include "areawalk/matrices.hpp"
#include "areawalk/montecarlo.hpp"
#include "areawalk/polytope.hpp"
#include "areawalk/sequences.hpp"
#include "areawalk/sticky.hpp"

using areawalk::ExactMatrix;
using areawalk::ExactRational;
namespace ex = areawalk::exact;
namespace cf = areawalk::closedform;
namespace mc = areawalk::mc;
namespace st = areawalk::sticky;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("FAILED " + what);
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.note(fmt::format("exception: {}", e.what()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0) v.require(secs < time_limit_s, fmt::format("runtime {:.1f} s >= {} s", secs, time_limit_s));
  if (!v.pass) ++failures;
  std::printf("%s criterion %d: %s [%.2f s] %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              v.detail.c_str());
  std::fflush(stdout);
}

mc::McConfig mc_cfg(std::uint64_t samples) { return {samples, kSeed, 1}; }

}  // namespace

int main() {
  criterion(1, "exact-sequence triple agreement and v routes, n <= 50", 5.0, [](Verdict& v) {
    const std::size_t n_max = 50;
    const auto c = ex::c_sequence(n_max);
    const auto b = ex::b_sequence(n_max);
    const auto h = ex::h_series_coefficients(n_max);
    const auto vd = ex::v_sequence(n_max, ex::VolumeRoute::direct_recursion);
    std::size_t bad_triple = 0;
    std::size_t bad_v = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const ExactRational np1(static_cast<std::int64_t>(n + 1));
      if (!(c[n - 1] == np1 * b[n - 1] && c[n - 1] == np1 * h[n - 1])) ++bad_triple;
      const auto from_c = areawalk::pow(ExactRational(2), static_cast<unsigned>(n)) * c[n - 1] /
                          (areawalk::factorial(static_cast<unsigned>(n)) *
                           areawalk::factorial(static_cast<unsigned>(n + 1)));
      if (!(vd[n - 1] == from_c)) ++bad_v;
    }
    v.require(bad_triple == 0, fmt::format("{} indices where c, (n+1)b, (n+1)h differ", bad_triple));
    v.require(bad_v == 0, fmt::format("{} indices where v routes differ", bad_v));
    v.note(fmt::format("c_50 has {} digits in its numerator", c.back().numerator_str().size()));
  });

  criterion(2, "matrix identities, n <= 30", 5.0, [](Verdict& v) {
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 30; ++n) {
      const auto A = ex::build_A(n);
      const auto L = ex::build_L(n);
      v.require(L * A == ExactMatrix::identity(n), fmt::format("L A = I at n = {}", n));
      for (const auto& s : L.row_sums()) v.require(s == ExactRational(1), fmt::format("row sum at n = {}", n));
      const auto cs = L.column_sums();
      for (std::size_t j = 0; j + 2 < n; ++j) v.require(cs[j] == ExactRational(0), fmt::format("col sum n = {}", n));
      v.require(cs[n - 1] == ex::triangular_number(n), fmt::format("last column sum n = {}", n));
      if (n >= 2) {
        v.require(cs[n - 2] == -ex::triangular_number(n - 1), fmt::format("column n-1 sum n = {}", n));
        const auto minor = areawalk::minor(L, {1}, {n}).materialize();
        for (const auto& e : minor.apply(ex::polytope_vertex(n))) {
          v.require(e == ExactRational(-1), fmt::format("L^{{1;n}} y* = -1 at n = {}", n));
        }
      }
      ++checked;
    }
    v.note(fmt::format("{} sizes checked exactly", checked));
  });

  criterion(3, "polytope volumes: exact n = 2, 3; Monte Carlo n = 4 at 1e6 samples", 0.0, [](Verdict& v) {
    const auto vs = ex::v_sequence(4, ex::VolumeRoute::direct_recursion);
    const auto v2 = ex::polytope_volume_exact(2);
    const auto v3 = ex::polytope_volume_exact(3);
    v.require(v2 == vs[1] && v2 == ExactRational(1, 2), "exact volume n = 2");
    v.require(v3 == vs[2] && v3 == ExactRational(1, 6), "exact volume n = 3");
    const auto e = ex::polytope_volume_mc(4, 1'000'000, kSeed);
    const double z = e.z_score(1.0 / 27.0);
    v.require(std::abs(z) <= 4.0, "n = 4 within 4 sigma of 1/27");
    v.note(fmt::format("vol_2 = {}, vol_3 = {}, MC vol_4 = {:.6f} +- {:.6f} (z = {:.2f})", v2.str(), v3.str(),
                       e.mean, e.std_error, z));
  });

  criterion(4, "closed-form chain: series, RK4, K identity", 5.0, [](Verdict& v) {
    double f_excess = -1.0;
    double g_excess = -1.0;
    for (int i = 0; i < 100; ++i) {
      const double t = 0.95 * i / 99.0;
      const auto f = cf::f_series(cf::q_map(t));
      f_excess = std::max(f_excess, std::abs(f.value - (2 - t) * t / (2 * (1 - t))) - f.tail_bound);
      const auto g = cf::gprime_series(t);
      const double target = (t - 2) * cf::G_closed(t) / (2 * (1 - t));
      g_excess = std::max(g_excess, std::abs(g.value - target) - g.tail_bound);
    }
    v.require(f_excess <= 1e-10, "f series within tail bound + 1e-10");
    v.require(g_excess <= 1e-10, "G' series within tail bound + 1e-10");
    const auto curve = cf::ode_integrate(0.99, 1e-3);
    double rk = 0.0;
    for (const auto& p : curve.points()) {
      rk = std::max(rk, std::abs(p.value - std::sqrt(1 - p.t) * std::exp(-p.t / 2)));
    }
    v.require(rk <= 1e-8, "RK4 within 1e-8");
    double k = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      const double g = std::sqrt(1 - t * t) * std::exp(-t * t / 2);
      k = std::max(k, std::abs(std::exp(t * t) * g * g - (1 - t * t)));
      k = std::max(k, std::abs(cf::K_closed(t) - (1 - t * t)));
    }
    v.require(k <= 1e-12, "K identity within 1e-12");
    v.note(fmt::format("f excess {:.2g}, G' excess {:.2g}, RK4 error {:.2g}, K error {:.2g}", f_excess, g_excess,
                       rk, k));
  });

  criterion(5, "Monte Carlo anchors at 1e6 samples", 120.0, [](Verdict& v) {
    const auto cfg = mc_cfg(1'000'000);
    const auto g1 = mc::estimate_Gn(0.5, 1, cfg);
    v.require(g1.within(std::exp(-0.5), 4.0), "G_1(0.5) vs e^-0.5");
    const auto a32 = mc::estimate_argmin_prob(3, 2, cfg);
    v.require(a32.within(1.0 / 6.0, 4.0), "argmin(3,2) vs 1/6");
    const auto a43 = mc::estimate_argmin_prob(4, 3, cfg);
    v.require(a43.within(3.0 / 32.0, 4.0), "argmin(4,3) vs 3/32");
    const auto g = mc::estimate_G(0.5, cfg);
    v.require(g.estimate.within(0.5506953, 4.0, 0.005), "G(0.5) vs 0.5506953");
    const auto os = mc::estimate_Gn_orderstats(0.5, 500, cfg);
    v.require(os.sorted.within(0.5507, 4.0, 0.01), "order statistics (sorted) n = 500 vs 0.5507");
    v.require(os.spacings.within(0.5507, 4.0, 0.01), "order statistics (spacings) n = 500 vs 0.5507");
    v.note(fmt::format("G_1 z = {:.2f}; argmin(3,2) z = {:.2f}; argmin(4,3) z = {:.2f}; "
                       "G(0.5) = {:.5f} +- {:.5f} (n0 = {}, bias proxy {:.2g}); "
                       "orderstats sorted {:.5f}, spacings {:.5f} +- {:.5f}",
                       g1.z_score(std::exp(-0.5)), a32.z_score(1.0 / 6.0), a43.z_score(3.0 / 32.0), g.estimate.mean,
                       g.estimate.std_error, g.horizon, g.bias_proxy, os.sorted.mean, os.spacings.mean,
                       os.spacings.std_error));
  });

  criterion(6, "partial-density laws", 120.0, [](Verdict& v) {
    const auto cfg = mc_cfg(1'000'000);
    const auto d = mc::estimate_partial_density(2, 1, 0.5, 0.02, cfg);
    const double tol = 3 * d.estimate.std_error + d.discretization_scale;
    const double diff = std::abs(d.estimate.mean - std::exp(-1.0));
    v.require(diff <= tol, "g_2^(1)(0.5) vs e^-1");
    v.note(fmt::format("g_2^(1)(0.5) = {:.4f}, |diff| {:.4f} <= {:.4f}", d.estimate.mean, diff, tol));
    for (auto [n, k, t] : {std::tuple{4UL, 2UL, 0.4}, std::tuple{5UL, 3UL, 0.3}}) {
      const auto r = mc::chaining_check(n, k, t, cfg);
      v.require(r.pass, r.name);
      v.note(fmt::format("{}: {:.4f} vs {:.4f} ({:.2f} sigma)", r.name, r.lhs, r.rhs,
                         std::abs(r.lhs - r.rhs) / r.sigma));
    }
    for (double t : {0.3, 0.5}) {
      const auto r = mc::first_density_check(2, t, cfg);
      v.require(r.pass, r.name);
      v.note(fmt::format("{}: {:.4f} vs {:.4f} ({:.2f} sigma)", r.name, r.lhs, r.rhs,
                         std::abs(r.lhs - r.rhs) / r.sigma));
    }
  });

  criterion(7, "sticky-particle limit, n = 1e4, 20 replicates, both models", 180.0, [](Verdict& v) {
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
    for (auto model : {st::InitModel::uniform, st::InitModel::poisson}) {
      const auto k = st::K_curve(10'000, model, grid, 20, kSeed);
      double worst = 0.0;
      for (const auto& p : k.mean.points()) worst = std::max(worst, std::abs(p.value - (1 - p.t * p.t)));
      v.require(worst <= 0.02, fmt::format("{} max deviation", st::to_string(model)));
      std::size_t bad = 0;
      double drift = 0.0;
      for (const auto& r : k.invariants) {
        bad += r.ok() ? 0 : 1;
        drift = std::max(drift, r.com_drift);
      }
      v.require(bad == 0, fmt::format("{} invariants on {} replicates", st::to_string(model), bad));
      v.note(fmt::format("{}: max |K/n - (1-t^2)| = {:.4f}, max com drift {:.2g}", st::to_string(model), worst,
                         drift));
    }
  });

  criterion(8, "asymptotic proxies: monotone G_n under CRN, g_30^(30)(t <= 0.7) < 0.01", 0.0, [](Verdict& v) {
    const double ts[] = {0.2, 0.5, 0.8};
    const std::size_t hs[] = {1, 2, 3, 5, 10, 20, 50, 100, 200};
    const auto grid = mc::estimate_Gn_grid(ts, hs, mc_cfg(200'000));
    bool monotone = true;
    for (std::size_t i = 1; i < std::size(hs); ++i) {
      for (std::size_t j = 0; j < std::size(ts); ++j) monotone = monotone && grid[i][j].mean <= grid[i - 1][j].mean;
    }
    v.require(monotone, "G_n non-increasing in n");
    double worst = 0.0;
    for (int i = 1; i <= 7; ++i) {
      const double t = i / 10.0;
      const auto d = mc::estimate_partial_density(30, 30, t, 0.02, mc_cfg(1'000'000));
      worst = std::max(worst, d.estimate.mean);
    }
    v.require(worst < 0.01, "g_30^(30) below 0.01");
    v.note(fmt::format("G_200(0.5) = {:.4f}; max g_30^(30)(t) over t = 0.1..0.7: {:.5f}", grid.back()[1].mean,
                       worst));
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
