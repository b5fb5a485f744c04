#include "areawalk/curve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace areawalk {

Curve::Curve(std::string label, std::vector<CurvePoint> points) : label_(std::move(label)) {
  points_.reserve(points.size());
  for (const auto& p : points) push_back(p);
}

void Curve::push_back(CurvePoint p) {
  if (!std::isfinite(p.t) || !std::isfinite(p.value)) {
    throw std::invalid_argument(fmt::format("Curve '{}': non-finite point ({}, {})", label_, p.t, p.value));
  }
  if (!points_.empty() && !(p.t > points_.back().t)) {
    throw std::invalid_argument(fmt::format("Curve '{}': t not strictly increasing at {}", label_, p.t));
  }
  points_.push_back(p);
}

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

std::string Curve::to_csv() const {
  std::string out = "t,value\n";
  for (const auto& p : points_) out += format_real(p.t) + "," + format_real(p.value) + "\n";
  return out;
}

Curve Curve::from_csv(std::string_view csv, std::string label) {
  std::istringstream in{std::string(csv)};
  std::string line;
  Curve c;
  c.label_ = std::move(label);
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "t,value") throw std::invalid_argument("Curve::from_csv: expected header 't,value'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("Curve::from_csv: bad row '" + line + "'");
    c.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return c;
}

nlohmann::json Curve::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points_) pts.push_back({{"t", p.t}, {"value", p.value}});
  return {{"label", label_}, {"points", pts}};
}

Curve Curve::from_json(const nlohmann::json& j) {
  Curve c;
  c.label_ = j.at("label").get<std::string>();
  for (const auto& p : j.at("points")) c.push_back({p.at("t").get<double>(), p.at("value").get<double>()});
  return c;
}

}  // namespace areawalk
