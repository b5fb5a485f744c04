#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "areawalk/rational.hpp"

namespace areawalk::exact {

// All sequences are returned 0-based: element k-1 holds the k-th term.

/// c_1..c_{n_max} from the quadratic convolution
///   c_n = n(n+1)/(n-1) * sum_{k=1}^{n-1} c_k c_{n-k} / ((k+1)(n-k+1)),  c_1 = 1.
RationalVector c_sequence(std::size_t n_max);

/// b_1..b_{n_max} from b_n = n/(n-1) * sum_{k=1}^{n-1} b_k b_{n-k},  b_1 = 1/2.
RationalVector b_sequence(std::size_t n_max);

/// Taylor coefficients 1..n_max of h(x) = q^{-1}(x)/2 with q(x) = x e^{-x},
/// obtained by Lagrange inversion of the series of q.
RationalVector h_series_coefficients(std::size_t n_max);

enum class VolumeRoute { from_c, direct_recursion };

/// v_1..v_{n_max}, v_1 = 1. `from_c` converts v_n = 2^n c_n / (n!(n+1)!);
/// `direct_recursion` uses
///   v_n = 1/((n-1)(n-1)! n!) * sum_{k=1}^{n-1} ((n-k)! k!)^2 v_k v_{n-k}.
RationalVector v_sequence(std::size_t n_max, VolumeRoute route);

enum class SequenceMethod { recursion, from_c, lagrange_inversion };
std::string_view to_string(SequenceMethod method);
SequenceMethod parse_sequence_method(std::string_view text);

struct TableMethods {
  SequenceMethod c = SequenceMethod::recursion;
  SequenceMethod b = SequenceMethod::recursion;
  SequenceMethod v = SequenceMethod::recursion;
};

/// c_n, b_n and v_n for n = 1..n_max, each tagged with the route that
/// produced it.
struct ConstantTable {
  std::size_t n_max = 0;
  RationalVector c;
  RationalVector b;
  RationalVector v;
  TableMethods methods;

  static ConstantTable build(std::size_t n_max, TableMethods methods = {});

  // 1-based accessors.
  [[nodiscard]] const ExactRational& c_at(std::size_t n) const { return c.at(n - 1); }
  [[nodiscard]] const ExactRational& b_at(std::size_t n) const { return b.at(n - 1); }
  [[nodiscard]] const ExactRational& v_at(std::size_t n) const { return v.at(n - 1); }

  /// Columns n,c_num,c_den,b_num,b_den,v_num,v_den with a header row.
  [[nodiscard]] std::string to_csv() const;
  static ConstantTable from_csv(std::string_view csv);
  /// Rationals as decimal strings "p/q" (or "p").
  [[nodiscard]] nlohmann::json to_json() const;
  static ConstantTable from_json(const nlohmann::json& j);
};

/// Cross-route agreement for n = 1..n_max: c (recursion) against (n+1) b
/// (own recursion) and (n+1) * Lagrange coefficient; v direct against v from c;
/// the base values c_1 = 1, b_1 = 1/2, v_1 = 1.
struct CrossRouteReport {
  std::size_t n_max = 0;
  bool c_b_agree = true;
  bool c_h_agree = true;
  bool v_routes_agree = true;
  bool base_values_ok = true;
  std::vector<std::string> disagreements;

  [[nodiscard]] bool ok() const { return disagreements.empty(); }
};

CrossRouteReport cross_check_routes(std::size_t n_max);
/// Same check against an externally supplied table (e.g. one read back from
/// disk or deliberately corrupted).
CrossRouteReport cross_check_table(const ConstantTable& table);

/// Certified check of c_k <= sqrt(k) e^k for k = 1..k_max, done as
/// c_k^2 <= k * e_lo^(2k) with e_lo a rational lower bound of e, so passing
/// cannot be an artifact of rounding.
struct GrowthBoundReport {
  std::size_t k_max = 0;
  ExactRational e_lower;
  ExactRational e_upper;
  bool holds = true;
  std::size_t first_violation = 0;  // 0 when none
  double max_ratio = 0.0;           // max_k c_k / (sqrt(k) e^k), informational
};

GrowthBoundReport check_growth_bound(std::size_t k_max);

/// Rational bracket [lower, upper] of e from the partial sum sum_{j<=terms} 1/j!
/// and the tail bound 2/(terms+1)!.
std::pair<ExactRational, ExactRational> e_bracket(unsigned terms);

}  // namespace areawalk::exact
