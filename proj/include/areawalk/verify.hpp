#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace areawalk {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string level;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool ok() const;
  [[nodiscard]] std::vector<std::string> failed() const;
  /// Header name,pass,detail.
  [[nodiscard]] std::string to_csv() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Runs every named check. "quick" uses reduced sizes and sample counts,
/// "full" the desk-scale ones. A check that throws is recorded as failed
/// with the exception text. Throws std::invalid_argument for another level.
VerifyReport run_verification(std::string_view level, std::uint64_t seed, unsigned threads = 1);

}  // namespace areawalk
