#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace areawalk {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Everything that determines the output of one CLI invocation. Two runs with
/// equal RunConfig write byte-identical files (timing stays out unless asked).
struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 20240601;
  std::uint64_t samples = 1'000'000;
  unsigned threads = 1;
  std::string out;             // empty: standard output
  std::string format = "csv";  // csv | json
  std::size_t n = 10;
  double t = 0.5;
  std::string t_grid = "0:1:0.01";
  std::size_t k_max = 120;
  std::string model = "uniform";
  std::size_t replicates = 20;
  std::size_t horizon = 0;     // 0: ceil(50/(1-t)^2)
  std::size_t k = 1;
  double width = 0.02;
  std::string estimator = "Gn";
  std::string level = "quick";
  bool timing = false;
  bool inject_disagreement = false;

  [[nodiscard]] nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  bool operator==(const RunConfig&) const = default;
};

/// "a:b:step" (inclusive of b up to rounding) or a comma-separated list.
/// Throws std::invalid_argument on malformed input, a non-positive step or a
/// list that does not strictly increase.
std::vector<double> parse_grid(std::string_view spec);

}  // namespace areawalk
