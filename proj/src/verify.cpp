#include "areawalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "areawalk/closedform.hpp"
#include "areawalk/matrices.hpp"
#include "areawalk/montecarlo.hpp"
#include "areawalk/polytope.hpp"
#include "areawalk/sequences.hpp"
#include "areawalk/sticky.hpp"

namespace areawalk {

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> VerifyReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

struct Sizes {
  std::size_t seq_n;
  std::size_t growth_k;
  std::size_t matrix_n;
  std::uint64_t volume_samples;
  std::uint64_t mc_samples;
  std::uint64_t density_samples;
  std::size_t sticky_n;
  std::size_t sticky_replicates;
  double sticky_tolerance;
};

constexpr Sizes kQuick{30, 60, 12, 200'000, 200'000, 400'000, 2'000, 4, 0.04};
constexpr Sizes kFull{50, 200, 30, 1'000'000, 1'000'000, 2'000'000, 10'000, 20, 0.02};

}  // namespace

std::string VerifyReport::to_csv() const {
  std::string out = "name,pass,detail\n";
  for (const auto& c : checks) out += fmt::format("{},{},{}\n", csv_field(c.name), c.pass, csv_field(c.detail));
  return out;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"level", level}, {"seed", seed}, {"ok", ok()}, {"checks", arr}};
}

VerifyReport run_verification(std::string_view level, std::uint64_t seed, unsigned threads) {
  if (level != "quick" && level != "full") {
    throw std::invalid_argument(fmt::format("verify: unknown level '{}' (expected quick or full)", level));
  }
  const Sizes& sz = level == "quick" ? kQuick : kFull;
  VerifyReport report;
  report.level = std::string(level);
  report.seed = seed;

  auto run = [&report](std::string name, const std::function<CheckResult()>& body) {
    CheckResult r;
    try {
      r = body();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = fmt::format("exception: {}", e.what());
    }
    r.name = std::move(name);
    report.checks.push_back(std::move(r));
  };
  auto mc_cfg = [&](std::uint64_t samples) { return mc::McConfig{samples, seed, threads}; };

  run("c/b/Lagrange routes agree", [&] {
    const auto r = exact::cross_check_routes(sz.seq_n);
    const bool pass = r.c_b_agree && r.c_h_agree && r.base_values_ok;
    return CheckResult{"", pass, fmt::format("n <= {}", sz.seq_n)};
  });
  run("v recursion vs c conversion", [&] {
    const auto r = exact::cross_check_routes(sz.seq_n);
    return CheckResult{"", r.v_routes_agree, fmt::format("n <= {}", sz.seq_n)};
  });
  run("growth bound c_k <= sqrt(k) e^k", [&] {
    const auto r = exact::check_growth_bound(sz.growth_k);
    return CheckResult{"", r.holds, fmt::format("k <= {}, max ratio {:.4g}", sz.growth_k, r.max_ratio)};
  });
  run("L_n A_n = I with sum identities", [&] {
    for (std::size_t n = 1; n <= sz.matrix_n; ++n) {
      const auto r = exact::verify_inverse(n);
      if (!r.passed()) {
        return CheckResult{"", false, fmt::format("n = {}: {} at ({}, {})", n, r.failure->check, r.failure->row,
                                                  r.failure->col)};
      }
    }
    return CheckResult{"", true, fmt::format("n <= {}", sz.matrix_n)};
  });
  run("polytope apex solves L y = -1", [&] {
    for (std::size_t n = 2; n <= sz.matrix_n; ++n) exact::polytope_vertex(n);
    return CheckResult{"", true, fmt::format("n <= {}", sz.matrix_n)};
  });
  run("exact polytope volumes n=2,3", [&] {
    const auto v = exact::v_sequence(3, exact::VolumeRoute::direct_recursion);
    const bool pass = exact::polytope_volume_exact(2) == v[1] && exact::polytope_volume_exact(3) == v[2];
    return CheckResult{"", pass, fmt::format("v_2 = {}, v_3 = {}", v[1].str(), v[2].str())};
  });
  run("polytope volume n=4 MC vs 1/27", [&] {
    const auto e = exact::polytope_volume_mc(4, sz.volume_samples, seed, threads);
    return CheckResult{"", e.within(1.0 / 27.0, 4.0), fmt::format("{:.6f} +- {:.6f}", e.mean, e.std_error)};
  });
  run("f series vs closed form", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = 0.95 * i / 99.0;
      const auto s = closedform::f_series(closedform::q_map(t));
      const double excess = std::abs(s.value - closedform::f_closed(t)) - s.tail_bound;
      worst = std::max(worst, excess);
    }
    return CheckResult{"", worst <= 1e-10, fmt::format("max excess over tail bound {:.3g}", worst)};
  });
  run("G' series vs ODE right side", [&] {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = 0.95 * i / 99.0;
      const auto s = closedform::gprime_series(t);
      worst = std::max(worst, std::abs(s.value - closedform::gprime_ode(t)) - s.tail_bound);
    }
    return CheckResult{"", worst <= 1e-10, fmt::format("max excess over tail bound {:.3g}", worst)};
  });
  run("RK4 vs sqrt(1-t) e^(-t/2)", [&] {
    const auto curve = closedform::ode_integrate(0.99, 1e-3);
    double worst = 0.0;
    for (const auto& p : curve.points()) worst = std::max(worst, std::abs(p.value - closedform::G_closed(p.t)));
    return CheckResult{"", worst <= 1e-8, fmt::format("max error {:.3g}", worst)};
  });
  run("e^(t^2) G(t^2)^2 = 1 - t^2", [&] {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      worst = std::max(worst, std::abs(closedform::K_closed(t) - (1.0 - t * t)));
    }
    return CheckResult{"", worst <= 1e-12, fmt::format("max error {:.3g}", worst)};
  });
  run("G_1(0.5) MC vs e^-0.5", [&] {
    const auto e = mc::estimate_Gn(0.5, 1, mc_cfg(sz.mc_samples));
    return CheckResult{"", e.within(std::exp(-0.5), 4.0), fmt::format("{:.5f} +- {:.5f}", e.mean, e.std_error)};
  });
  run("argmin frequency n=3 k=2 vs 1/6", [&] {
    const auto e = mc::estimate_argmin_prob(3, 2, mc_cfg(sz.mc_samples));
    return CheckResult{"", e.within(1.0 / 6.0, 4.0), fmt::format("{:.5f} +- {:.5f}", e.mean, e.std_error)};
  });
  run("G(0.5) MC vs closed form", [&] {
    const auto g = mc::estimate_G(0.5, mc_cfg(sz.mc_samples));
    const double ref = closedform::G_closed(0.5);
    return CheckResult{"", g.estimate.within(ref, 4.0, 0.005),
                       fmt::format("{:.5f} +- {:.5f} (closed form {:.5f}, horizon {}, bias proxy {:.2g})",
                                   g.estimate.mean, g.estimate.std_error, ref, g.horizon, g.bias_proxy)};
  });
  run("chaining g_4^(2)(0.4)", [&] {
    const auto r = mc::chaining_check(4, 2, 0.4, mc_cfg(sz.density_samples));
    return CheckResult{"", r.pass, fmt::format("{:.4f} vs {:.4f}, tolerance {:.4f}", r.lhs, r.rhs, r.tolerance)};
  });
  run("g_3^(1)(0.5) vs G_2(0.5) e^-0.5", [&] {
    const auto r = mc::first_density_check(2, 0.5, mc_cfg(sz.density_samples));
    return CheckResult{"", r.pass, fmt::format("{:.4f} vs {:.4f}, tolerance {:.4f}", r.lhs, r.rhs, r.tolerance)};
  });

  // One sticky run per model feeds both sticky checks.
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  std::vector<sticky::KCurve> curves;
  std::string sticky_error;
  try {
    for (auto model : {sticky::InitModel::uniform, sticky::InitModel::poisson}) {
      curves.push_back(sticky::K_curve(sz.sticky_n, model, grid, sz.sticky_replicates, seed, threads));
    }
  } catch (const std::exception& e) {
    sticky_error = e.what();
  }
  run("K_n curve vs 1−t²", [&] {
    if (!sticky_error.empty()) return CheckResult{"", false, "exception: " + sticky_error};
    double worst = 0.0;
    for (const auto& c : curves) {
      for (const auto& p : c.mean.points()) worst = std::max(worst, std::abs(p.value - (1.0 - p.t * p.t)));
    }
    return CheckResult{"", worst <= sz.sticky_tolerance,
                       fmt::format("n = {}, {} replicates per model, max deviation {:.4f} (tolerance {})",
                                   sz.sticky_n, sz.sticky_replicates, worst, sz.sticky_tolerance)};
  });
  run("sticky invariants", [&] {
    if (!sticky_error.empty()) return CheckResult{"", false, "exception: " + sticky_error};
    for (const auto& c : curves) {
      for (const auto& r : c.invariants) {
        if (!r.ok()) return CheckResult{"", false, r.describe()};
      }
    }
    return CheckResult{"", true, "mass, centre of mass, monotone K, n-1 merges, acceleration law"};
  });
  return report;
}

}  // namespace areawalk
