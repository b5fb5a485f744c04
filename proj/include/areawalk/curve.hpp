#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace areawalk {

struct CurvePoint {
  double t;
  double value;
};

/// A sampled function; t strictly increasing, values finite.
class Curve {
 public:
  Curve() = default;
  Curve(std::string label, std::vector<CurvePoint> points);

  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const std::vector<CurvePoint>& points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const CurvePoint& back() const { return points_.back(); }

  /// Appends; throws std::invalid_argument if t does not increase or the
  /// value is not finite.
  void push_back(CurvePoint p);

  /// Header "t,value"; numbers with 17 significant digits.
  [[nodiscard]] std::string to_csv() const;
  static Curve from_csv(std::string_view csv, std::string label = {});
  [[nodiscard]] nlohmann::json to_json() const;
  static Curve from_json(const nlohmann::json& j);

 private:
  std::string label_;
  std::vector<CurvePoint> points_;
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_real(double v);

}  // namespace areawalk
