#include "areawalk/run_config.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace areawalk {

nlohmann::json RunConfig::to_json() const {
  // nlohmann::json keeps keys sorted, so the serialized form is canonical.
  return {
      {"subcommand", subcommand}, {"seed", seed},       {"samples", samples},
      {"threads", threads},       {"out", out},         {"format", format},
      {"n", n},                   {"t", t},             {"t_grid", t_grid},
      {"k_max", k_max},           {"model", model},     {"replicates", replicates},
      {"horizon", horizon},       {"k", k},             {"width", width},
      {"estimator", estimator},   {"level", level},     {"timing", timing},
      {"inject_disagreement", inject_disagreement},
  };
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("subcommand", c.subcommand);
  get("seed", c.seed);
  get("samples", c.samples);
  get("threads", c.threads);
  get("out", c.out);
  get("format", c.format);
  get("n", c.n);
  get("t", c.t);
  get("t_grid", c.t_grid);
  get("k_max", c.k_max);
  get("model", c.model);
  get("replicates", c.replicates);
  get("horizon", c.horizon);
  get("k", c.k);
  get("width", c.width);
  get("estimator", c.estimator);
  get("level", c.level);
  get("timing", c.timing);
  get("inject_disagreement", c.inject_disagreement);
  return c;
}

namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(fmt::format("grid: '{}' is not a number", s));
  }
  return v;
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  if (spec.empty()) throw std::invalid_argument("grid: empty specification");
  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
      throw std::invalid_argument(fmt::format("grid: '{}' is not of the form start:stop:step", spec));
    }
    const double a = parse_number(spec.substr(0, c1));
    const double b = parse_number(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_number(spec.substr(c2 + 1));
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
    if (b < a) throw std::invalid_argument("grid: stop below start");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw std::invalid_argument("grid: too many points");
    for (std::size_t i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
    // Land exactly on the stop value when it is a grid point.
    if (std::abs(out.back() - b) <= 1e-9 * std::max(1.0, std::abs(b))) out.back() = b;
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      const auto comma = spec.find(',', pos);
      const auto end = comma == std::string_view::npos ? spec.size() : comma;
      out.push_back(parse_number(spec.substr(pos, end - pos)));
      if (out.size() > 1 && !(out.back() > out[out.size() - 2])) {
        throw std::invalid_argument("grid: values must strictly increase");
      }
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

}  // namespace areawalk
