#include "areawalk/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "areawalk/closedform.hpp"
#include "areawalk/errors.hpp"
#include "areawalk/matrices.hpp"
#include "areawalk/montecarlo.hpp"
#include "areawalk/polytope.hpp"
#include "areawalk/run_config.hpp"
#include "areawalk/sequences.hpp"
#include "areawalk/sticky.hpp"
#include "areawalk/verify.hpp"

namespace areawalk::cli {

namespace {

using nlohmann::json;
using Record = std::vector<std::pair<std::string, json>>;

/// What a subcommand produced: a CSV body, a JSON body and its verdict.
struct Output {
  std::string csv;
  json data;
  bool pass = true;
  std::string failure;  // message for err when !pass
};

std::string csv_value(const json& v) {
  switch (v.type()) {
    case json::value_t::null: return "nan";
    case json::value_t::number_float: return format_real(v.get<double>());
    case json::value_t::string: {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
    default: return v.dump();
  }
}

/// One-row table whose columns keep the order of `r`.
std::string record_csv(const Record& r) {
  std::string head;
  std::string row;
  for (std::size_t i = 0; i < r.size(); ++i) {
    head += (i == 0 ? "" : ",") + r[i].first;
    row += (i == 0 ? "" : ",") + csv_value(r[i].second);
  }
  return head + "\n" + row + "\n";
}

json record_json(const Record& r) {
  json j = json::object();
  for (const auto& [k, v] : r) j[k] = v;
  return j;
}

mc::McConfig mc_config(const RunConfig& c) { return {c.samples, c.seed, c.threads}; }

Output cmd_constants(const RunConfig& c) {
  if (c.n < 1) throw std::invalid_argument("constants: --n must be >= 1");
  auto table = exact::ConstantTable::build(c.n);
  // Test hook: corrupt the last c_n so the cross-route check must fail.
  if (c.inject_disagreement) table.c.back() = table.c.back() + ExactRational(1);
  const auto report = exact::cross_check_table(table);

  Output o;
  o.csv = fmt::format("# cross_route: c_b_agree={} c_h_agree={} v_routes_agree={} base_values_ok={}\n",
                      report.c_b_agree, report.c_h_agree, report.v_routes_agree, report.base_values_ok) +
          table.to_csv();
  o.data = {{"table", table.to_json()},
            {"cross_route",
             {{"c_b_agree", report.c_b_agree},
              {"c_h_agree", report.c_h_agree},
              {"v_routes_agree", report.v_routes_agree},
              {"base_values_ok", report.base_values_ok},
              {"disagreements", report.disagreements}}}};
  o.pass = report.ok();
  if (!o.pass) {
    o.failure = "cross-route disagreement: " + report.disagreements.front();
  }
  return o;
}

Output cmd_matrices(const RunConfig& c) {
  if (c.n < 1) throw std::invalid_argument("matrices: --n must be >= 1");
  const auto A = exact::build_A(c.n);
  const auto L = exact::build_L(c.n);
  const auto report = exact::verify_inverse(c.n);

  Output o;
  o.csv = fmt::format("# checks: {} passed={}\nmatrix,row,col,value\n", fmt::join(report.checks, ";"),
                      report.passed());
  json ja = json::array();
  json jl = json::array();
  for (const auto* m : {&A, &L}) {
    const char* name = m == &A ? "A" : "L";
    for (std::size_t i = 0; i < m->rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m->cols(); ++j) {
        o.csv += fmt::format("{},{},{},{}\n", name, i + 1, j + 1, (*m)(i, j).str());
        row.push_back((*m)(i, j).str());
      }
      (m == &A ? ja : jl).push_back(row);
    }
  }
  o.data = {{"n", c.n}, {"A", ja}, {"L", jl}, {"checks", report.checks}, {"passed", report.passed()}};
  if (report.failure) {
    const auto& f = *report.failure;
    o.data["failure"] = {{"check", f.check}, {"row", f.row}, {"col", f.col}, {"got", f.got},
                         {"expected", f.expected}};
    o.pass = false;
    o.failure = fmt::format("{} failed at ({}, {}): got {}, expected {}", f.check, f.row, f.col, f.got, f.expected);
  }
  return o;
}

Output cmd_gfun(const RunConfig& c) {
  const auto grid = parse_grid(c.t_grid);
  if (c.k_max < 1 || c.k_max > closedform::default_evaluator().max_order()) {
    throw std::invalid_argument(fmt::format("gfun: --k-max must lie in [1, {}]",
                                            closedform::default_evaluator().max_order()));
  }
  Output o;
  o.csv = "t,G,K,Gprime_ode,Gprime_series,Gprime_tail_bound\n";
  json points = json::array();
  for (double t : grid) {
    Record r{{"t", t}, {"G", closedform::G_closed(t)}, {"K", closedform::K_closed(t)}};
    if (t < 1.0) {
      const auto s = closedform::gprime_series(t, c.k_max);
      r.emplace_back("Gprime_ode", closedform::gprime_ode(t));
      r.emplace_back("Gprime_series", s.value);
      r.emplace_back("Gprime_tail_bound", s.tail_bound);
    } else {
      // G' is unbounded at t = 1.
      r.emplace_back("Gprime_ode", nullptr);
      r.emplace_back("Gprime_series", nullptr);
      r.emplace_back("Gprime_tail_bound", nullptr);
    }
    std::string line;
    for (const auto& [k, v] : r) line += (line.empty() ? "" : ",") + csv_value(v);
    o.csv += line + "\n";
    points.push_back(record_json(r));
  }
  o.data = {{"k_max", c.k_max}, {"points", points}};
  return o;
}

Output comparison_output(Record r, const mc::ComparisonReport& cmp) {
  r.emplace_back("mean", cmp.lhs);
  r.emplace_back("rhs", cmp.rhs);
  r.emplace_back("sigma", cmp.sigma);
  r.emplace_back("tolerance", cmp.tolerance);
  r.emplace_back("pass", cmp.pass);
  Output o;
  o.pass = cmp.pass;
  if (!cmp.pass) o.failure = fmt::format("{}: |{} - {}| > {}", cmp.name, cmp.lhs, cmp.rhs, cmp.tolerance);
  o.csv = record_csv(r);
  o.data = record_json(r);
  return o;
}

Output cmd_mc(const RunConfig& c) {
  const auto cfg = mc_config(c);
  Record r{{"estimator", c.estimator}};
  auto add_estimate = [&r](const MCEstimate& e) {
    r.emplace_back("mean", e.mean);
    r.emplace_back("stderr", e.std_error);
    r.emplace_back("samples", e.samples);
    r.emplace_back("seed", e.seed);
  };
  if (c.estimator == "Gn") {
    r.emplace_back("n", c.n);
    r.emplace_back("t", c.t);
    add_estimate(mc::estimate_Gn(c.t, c.n, cfg));
  } else if (c.estimator == "G") {
    const auto g = mc::estimate_G(c.t, cfg, c.horizon);
    r.emplace_back("t", c.t);
    r.emplace_back("horizon", g.horizon);
    add_estimate(g.estimate);
    r.emplace_back("bias_proxy", g.bias_proxy);
    r.emplace_back("bias_warning", g.bias_warning);
  } else if (c.estimator == "argmin") {
    r.emplace_back("n", c.n);
    r.emplace_back("k", c.k);
    add_estimate(mc::estimate_argmin_prob(c.n, c.k, cfg));
  } else if (c.estimator == "density") {
    const auto d = mc::estimate_partial_density(c.n, c.k, c.t, c.width, cfg);
    r.emplace_back("n", c.n);
    r.emplace_back("k", c.k);
    r.emplace_back("t", c.t);
    r.emplace_back("width", c.width);
    add_estimate(d.estimate);
    r.emplace_back("discretization_scale", d.discretization_scale);
  } else if (c.estimator == "volume") {
    r.emplace_back("n", c.n);
    add_estimate(exact::polytope_volume_mc(c.n, c.samples, c.seed, c.threads));
  } else if (c.estimator == "chaining") {
    r.insert(r.end(), {{"n", c.n}, {"k", c.k}, {"t", c.t}, {"width", c.width}, {"samples", c.samples},
                       {"seed", c.seed}});
    return comparison_output(std::move(r), mc::chaining_check(c.n, c.k, c.t, cfg, c.width));
  } else if (c.estimator == "first-density") {
    r.insert(r.end(), {{"n", c.n}, {"t", c.t}, {"width", c.width}, {"samples", c.samples}, {"seed", c.seed}});
    return comparison_output(std::move(r), mc::first_density_check(c.n, c.t, cfg, c.width));
  } else {
    throw std::invalid_argument("mc: unknown estimator " + c.estimator);
  }
  Output o;
  o.csv = record_csv(r);
  o.data = record_json(r);
  return o;
}

Output cmd_orderstats(const RunConfig& c) {
  const auto e = mc::estimate_Gn_orderstats(c.t, c.n, mc_config(c));
  Record r{{"n", c.n},
           {"t", c.t},
           {"sorted_mean", e.sorted.mean},
           {"sorted_stderr", e.sorted.std_error},
           {"spacings_mean", e.spacings.mean},
           {"spacings_stderr", e.spacings.std_error},
           {"z_difference", e.z_difference},
           {"agree", e.agree},
           {"samples", c.samples},
           {"seed", c.seed}};
  Output o;
  o.csv = record_csv(r);
  o.data = record_json(r);
  o.pass = e.agree;
  if (!e.agree) o.failure = fmt::format("sorted and spacings estimates differ by {:.2f} sigma", e.z_difference);
  return o;
}

Output cmd_sticky(const RunConfig& c) {
  const auto grid = parse_grid(c.t_grid);
  const auto model = sticky::parse_init_model(c.model);
  const auto k = sticky::K_curve(c.n, model, grid, c.replicates, c.seed, c.threads);
  Output o;
  o.csv = k.to_csv();
  json points = json::array();
  for (std::size_t i = 0; i < k.mean.size(); ++i) {
    points.push_back({{"t", k.mean.points()[i].t}, {"mean", k.mean.points()[i].value}, {"stddev", k.stddev[i]}});
  }
  o.data = {{"n", k.n},         {"replicates", k.replicates},
            {"model", c.model}, {"seed", k.seed},
            {"points", points}, {"invariants_ok", k.all_invariants_ok()}};
  o.pass = k.all_invariants_ok();
  if (!o.pass) {
    for (const auto& r : k.invariants) {
      if (!r.ok()) {
        o.failure = "sticky invariant violated: " + r.describe();
        break;
      }
    }
  }
  return o;
}

Output cmd_verify(const RunConfig& c) {
  const auto report = run_verification(c.level, c.seed, c.threads);
  Output o;
  o.csv = report.to_csv();
  o.data = report.to_json();
  o.pass = report.ok();
  if (!o.pass) o.failure = fmt::format("failed checks: {}", fmt::join(report.failed(), "; "));
  return o;
}

std::string render(const RunConfig& c, const Output& o, std::optional<double> wall_ms) {
  const json wall = wall_ms ? json(*wall_ms) : json(nullptr);
  if (c.format == "json") {
    json doc = {{"tool", "areawalk"},
                {"version", kToolVersion},
                {"config", c.to_json()},
                {"wall_time_ms", wall},
                {"result", o.data}};
    if (c.subcommand == "mc") doc["result"]["wall_time_ms"] = wall;
    return doc.dump(2) + "\n";
  }
  return fmt::format("# tool: areawalk {}\n# config: {}\n# wall_time_ms: {}\n", kToolVersion, c.to_json().dump(),
                     wall.dump()) +
         o.csv;
}

void add_output_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out", c.out, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--timing", c.timing, "Record wall time in the output (breaks byte-identical reruns)");
}

void add_mc_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--samples", c.samples, "Sample paths")->check(CLI::PositiveNumber);
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Random walk area minima, their closed forms and sticky particle checks", "areawalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* constants = app.add_subcommand("constants", "Exact c_n, b_n, v_n with cross-route agreement");
  constants->add_option("--n", c.n, "Largest index n_max")->check(CLI::PositiveNumber);
  constants->add_flag("--inject-disagreement", c.inject_disagreement)->group("");
  add_output_flags(constants, c);

  auto* matrices = app.add_subcommand("matrices", "A_n, L_n and their exact identities");
  matrices->add_option("--n", c.n, "Matrix size")->check(CLI::PositiveNumber);
  add_output_flags(matrices, c);

  auto* gfun = app.add_subcommand("gfun", "G, K and G' (closed form, ODE and series) on a grid");
  gfun->add_option("--t-grid", c.t_grid, "start:stop:step or comma list");
  gfun->add_option("--k-max", c.k_max, "Series truncation order");
  add_output_flags(gfun, c);

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimators");
  mc_cmd->add_option("--estimator", c.estimator, "Gn, G, argmin, density, volume, chaining or first-density")
      ->check(CLI::IsMember({"Gn", "G", "argmin", "density", "volume", "chaining", "first-density"}));
  mc_cmd->add_option("--n", c.n, "Walk length (or polytope index for volume)");
  mc_cmd->add_option("--t", c.t, "Threshold t");
  mc_cmd->add_option("--k", c.k, "Index k");
  mc_cmd->add_option("--width", c.width, "Finite-difference width for densities");
  mc_cmd->add_option("--horizon", c.horizon, "Truncation horizon for G (0: ceil(50/(1-t)^2))");
  add_mc_flags(mc_cmd, c);
  add_output_flags(mc_cmd, c);

  auto* orderstats = app.add_subcommand("orderstats", "Order-statistics functional, sorted vs spacings");
  orderstats->add_option("--n", c.n, "Number of uniforms");
  orderstats->add_option("--t", c.t, "Threshold t");
  add_mc_flags(orderstats, c);
  add_output_flags(orderstats, c);

  auto* sticky_cmd = app.add_subcommand("sticky", "Sticky particle cluster counts K_n(t)/n");
  sticky_cmd->add_option("--n", c.n, "Particles")->check(CLI::PositiveNumber);
  sticky_cmd->add_option("--model", c.model, "uniform or poisson")->check(CLI::IsMember({"uniform", "poisson"}));
  sticky_cmd->add_option("--t-grid", c.t_grid, "start:stop:step or comma list");
  sticky_cmd->add_option("--replicates", c.replicates, "Independent replicates")->check(CLI::PositiveNumber);
  sticky_cmd->add_option("--seed", c.seed, "Random seed");
  sticky_cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_output_flags(sticky_cmd, c);

  auto* verify = app.add_subcommand("verify", "Run every named check");
  verify->add_option("--level", c.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", c.seed, "Random seed");
  verify->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_output_flags(verify, c);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  const std::vector<std::pair<CLI::App*, std::function<Output(const RunConfig&)>>> commands{
      {constants, cmd_constants}, {matrices, cmd_matrices},     {gfun, cmd_gfun},    {mc_cmd, cmd_mc},
      {orderstats, cmd_orderstats}, {sticky_cmd, cmd_sticky}, {verify, cmd_verify}};

  Output result;
  std::optional<double> wall_ms;
  try {
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      c.subcommand = sub->get_name();
      const auto start = std::chrono::steady_clock::now();
      result = fn(c);
      if (c.timing) {
        wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kCheckFailed;
  }

  const std::string text = render(c, result, wall_ms);
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << c.out << " for writing\n";
      return kUsageError;
    }
    file << text;
    file.close();
    if (!file) {
      err << "error: write to " << c.out << " failed\n";
      return kUsageError;
    }
  }
  if (!result.pass) {
    err << "check failed: " << result.failure << "\n";
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace areawalk::cli
