#include "areawalk/sequences.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "areawalk/power_series.hpp"

namespace areawalk::exact {

namespace {

void require_positive(std::size_t n_max, const char* what) {
  if (n_max == 0) throw std::invalid_argument(fmt::format("{}: n_max must be >= 1", what));
}

ExactRational rat(std::size_t v) { return ExactRational(static_cast<std::int64_t>(v)); }

}  // namespace

RationalVector c_sequence(std::size_t n_max) {
  require_positive(n_max, "c_sequence");
  // The same recursion on d_n = 2 n! c_n, which keeps every term over a
  // common denominator:
  //   d_n = n / (2 (n-1)(n+2)) * sum_k d_k d_{n-k} binom(n+2, k+1).
  // Rational sums of c_k directly spend most of their time in gcds.
  std::vector<mpq_class> d(n_max + 1);
  d[1] = 2;
  mpz_class binom;
  for (std::size_t n = 2; n <= n_max; ++n) {
    mpq_class sum = 0;
    for (std::size_t k = 1; k < n; ++k) {
      mpz_bin_uiui(binom.get_mpz_t(), n + 2, k + 1);
      sum += d[k] * d[n - k] * binom;
    }
    d[n] = sum * mpq_class(static_cast<long>(n), static_cast<long>(2 * (n - 1) * (n + 2)));
    d[n].canonicalize();
  }
  RationalVector out;
  out.reserve(n_max);
  mpz_class fact = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    fact *= static_cast<unsigned long>(n);
    mpq_class c = d[n] / (2 * fact);
    c.canonicalize();
    out.emplace_back(c);
  }
  return out;
}

RationalVector b_sequence(std::size_t n_max) {
  require_positive(n_max, "b_sequence");
  std::vector<mpq_class> b(n_max + 1);
  b[1] = mpq_class(1, 2);
  for (std::size_t n = 2; n <= n_max; ++n) {
    mpq_class sum = 0;
    for (std::size_t k = 1; k < n; ++k) sum += b[k] * b[n - k];
    b[n] = mpq_class(static_cast<long>(n), static_cast<long>(n - 1)) * sum;
    b[n].canonicalize();
  }
  RationalVector out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.emplace_back(b[n]);
  return out;
}

RationalVector h_series_coefficients(std::size_t n_max) {
  require_positive(n_max, "h_series_coefficients");
  auto inverse = lagrange_inverse_coefficients(x_exp_minus_x(n_max + 1), n_max);
  const ExactRational half(1, 2);
  for (auto& a : inverse) a *= half;
  return inverse;
}

RationalVector v_sequence(std::size_t n_max, VolumeRoute route) {
  require_positive(n_max, "v_sequence");
  RationalVector v;
  v.reserve(n_max);
  if (route == VolumeRoute::from_c) {
    const auto c = c_sequence(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
      v.push_back(pow(ExactRational(2), static_cast<unsigned>(n)) * c[n - 1] /
                  (factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n + 1))));
    }
    return v;
  }
  std::vector<ExactRational> fact(n_max + 1);
  fact[0] = 1;
  for (std::size_t k = 1; k <= n_max; ++k) fact[k] = fact[k - 1] * rat(k);
  v.emplace_back(1);
  for (std::size_t n = 2; n <= n_max; ++n) {
    ExactRational sum;
    for (std::size_t k = 1; k < n; ++k) {
      const ExactRational w = fact[n - k] * fact[k];
      sum += w * w * v[k - 1] * v[n - k - 1];
    }
    v.push_back(sum / (rat(n - 1) * fact[n - 1] * fact[n]));
  }
  return v;
}

std::string_view to_string(SequenceMethod method) {
  switch (method) {
    case SequenceMethod::recursion: return "recursion";
    case SequenceMethod::from_c: return "from-c";
    case SequenceMethod::lagrange_inversion: return "lagrange-inversion";
  }
  return "unknown";
}

SequenceMethod parse_sequence_method(std::string_view text) {
  if (text == "recursion") return SequenceMethod::recursion;
  if (text == "from-c") return SequenceMethod::from_c;
  if (text == "lagrange-inversion") return SequenceMethod::lagrange_inversion;
  throw std::invalid_argument(fmt::format("unknown sequence method '{}'", text));
}

// ---------------------------------------------------------------------------

ConstantTable ConstantTable::build(std::size_t n_max, TableMethods methods) {
  require_positive(n_max, "ConstantTable::build");
  ConstantTable t;
  t.n_max = n_max;
  t.methods = methods;

  switch (methods.c) {
    case SequenceMethod::recursion:
      t.c = c_sequence(n_max);
      break;
    case SequenceMethod::lagrange_inversion: {
      t.c = h_series_coefficients(n_max);
      for (std::size_t n = 1; n <= n_max; ++n) t.c[n - 1] *= rat(n + 1);
      break;
    }
    case SequenceMethod::from_c:
      throw std::invalid_argument("ConstantTable: c cannot be derived from itself");
  }

  switch (methods.b) {
    case SequenceMethod::recursion:
      t.b = b_sequence(n_max);
      break;
    case SequenceMethod::from_c:
      t.b = t.c;
      for (std::size_t n = 1; n <= n_max; ++n) t.b[n - 1] /= rat(n + 1);
      break;
    case SequenceMethod::lagrange_inversion:
      t.b = h_series_coefficients(n_max);
      break;
  }

  switch (methods.v) {
    case SequenceMethod::recursion:
      t.v = v_sequence(n_max, VolumeRoute::direct_recursion);
      break;
    case SequenceMethod::from_c:
      t.v.clear();
      for (std::size_t n = 1; n <= n_max; ++n) {
        t.v.push_back(pow(ExactRational(2), static_cast<unsigned>(n)) * t.c[n - 1] /
                      (factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n + 1))));
      }
      break;
    case SequenceMethod::lagrange_inversion:
      throw std::invalid_argument("ConstantTable: no Lagrange route for v");
  }
  return t;
}

std::string ConstantTable::to_csv() const {
  std::ostringstream os;
  os << "n,c_num,c_den,b_num,b_den,v_num,v_den\n";
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto& cn = c[n - 1];
    const auto& bn = b[n - 1];
    const auto& vn = v[n - 1];
    os << n << ',' << cn.numerator_str() << ',' << cn.denominator_str() << ',' << bn.numerator_str()
       << ',' << bn.denominator_str() << ',' << vn.numerator_str() << ',' << vn.denominator_str()
       << '\n';
  }
  return os.str();
}

ConstantTable ConstantTable::from_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  ConstantTable t;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "n,c_num,c_den,b_num,b_den,v_num,v_den") {
        throw std::invalid_argument("ConstantTable::from_csv: unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw std::invalid_argument("ConstantTable::from_csv: bad row '" + line + "'");
    if (std::stoul(cells[0]) != t.n_max + 1) {
      throw std::invalid_argument("ConstantTable::from_csv: rows out of order");
    }
    t.c.push_back(ExactRational::parse(cells[1] + "/" + cells[2]));
    t.b.push_back(ExactRational::parse(cells[3] + "/" + cells[4]));
    t.v.push_back(ExactRational::parse(cells[5] + "/" + cells[6]));
    ++t.n_max;
  }
  if (t.n_max == 0) throw std::invalid_argument("ConstantTable::from_csv: no rows");
  return t;
}

nlohmann::json ConstantTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t n = 1; n <= n_max; ++n) {
    rows.push_back({{"n", n}, {"c", c[n - 1].str()}, {"b", b[n - 1].str()}, {"v", v[n - 1].str()}});
  }
  return {{"n_max", n_max},
          {"methods",
           {{"c", std::string(to_string(methods.c))},
            {"b", std::string(to_string(methods.b))},
            {"v", std::string(to_string(methods.v))}}},
          {"rows", rows}};
}

ConstantTable ConstantTable::from_json(const nlohmann::json& j) {
  ConstantTable t;
  t.n_max = j.at("n_max").get<std::size_t>();
  const auto& m = j.at("methods");
  t.methods.c = parse_sequence_method(m.at("c").get<std::string>());
  t.methods.b = parse_sequence_method(m.at("b").get<std::string>());
  t.methods.v = parse_sequence_method(m.at("v").get<std::string>());
  for (const auto& row : j.at("rows")) {
    t.c.push_back(ExactRational::parse(row.at("c").get<std::string>()));
    t.b.push_back(ExactRational::parse(row.at("b").get<std::string>()));
    t.v.push_back(ExactRational::parse(row.at("v").get<std::string>()));
  }
  if (t.c.size() != t.n_max) throw std::invalid_argument("ConstantTable::from_json: row count != n_max");
  return t;
}

// ---------------------------------------------------------------------------

CrossRouteReport cross_check_table(const ConstantTable& table) {
  CrossRouteReport r;
  r.n_max = table.n_max;
  const std::size_t n_max = table.n_max;
  const auto b_rec = b_sequence(n_max);
  const auto h = h_series_coefficients(n_max);
  const auto v_from_c = [&] {
    RationalVector v;
    for (std::size_t n = 1; n <= n_max; ++n) {
      v.push_back(pow(ExactRational(2), static_cast<unsigned>(n)) * table.c[n - 1] /
                  (factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n + 1))));
    }
    return v;
  }();
  const auto v_direct = v_sequence(n_max, VolumeRoute::direct_recursion);

  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto& cn = table.c[n - 1];
    if (cn != rat(n + 1) * b_rec[n - 1] || table.b[n - 1] != b_rec[n - 1]) {
      r.c_b_agree = false;
      r.disagreements.push_back(fmt::format("n={}: c={} vs (n+1)b={} (table b={})", n, cn.str(),
                                            (rat(n + 1) * b_rec[n - 1]).str(), table.b[n - 1].str()));
    }
    if (cn != rat(n + 1) * h[n - 1]) {
      r.c_h_agree = false;
      r.disagreements.push_back(
          fmt::format("n={}: c={} vs (n+1)h_n={}", n, cn.str(), (rat(n + 1) * h[n - 1]).str()));
    }
    if (table.v[n - 1] != v_direct[n - 1] || v_direct[n - 1] != v_from_c[n - 1]) {
      r.v_routes_agree = false;
      r.disagreements.push_back(fmt::format("n={}: v table={} direct={} from-c={}", n,
                                            table.v[n - 1].str(), v_direct[n - 1].str(),
                                            v_from_c[n - 1].str()));
    }
  }
  if (table.c[0] != ExactRational(1) || table.b[0] != ExactRational(1, 2) ||
      table.v[0] != ExactRational(1)) {
    r.base_values_ok = false;
    r.disagreements.push_back("base values c_1 = 1, b_1 = 1/2, v_1 = 1 violated");
  }
  return r;
}

CrossRouteReport cross_check_routes(std::size_t n_max) {
  return cross_check_table(ConstantTable::build(n_max));
}

std::pair<ExactRational, ExactRational> e_bracket(unsigned terms) {
  ExactRational sum;
  ExactRational term = 1;
  for (unsigned j = 0; j <= terms; ++j) {
    if (j > 0) term /= ExactRational(static_cast<std::int64_t>(j));
    sum += term;
  }
  // sum_{j>terms} 1/j! < 2/(terms+1)!
  const ExactRational tail = ExactRational(2) / factorial(terms + 1);
  return {sum, sum + tail};
}

GrowthBoundReport check_growth_bound(std::size_t k_max) {
  require_positive(k_max, "check_growth_bound");
  GrowthBoundReport r;
  r.k_max = k_max;
  std::tie(r.e_lower, r.e_upper) = e_bracket(40);
  const auto c = c_sequence(k_max);
  ExactRational e_pow = 1;  // e_lo^(2k)
  const ExactRational e_sq = r.e_lower * r.e_lower;
  for (std::size_t k = 1; k <= k_max; ++k) {
    e_pow *= e_sq;
    const auto& ck = c[k - 1];
    if (!(ck * ck <= rat(k) * e_pow)) {
      r.holds = false;
      if (r.first_violation == 0) r.first_violation = k;
    }
    // log-scale ratio avoids overflow of e^k for large k
    const double log_ratio = std::log(ck.to_double()) - 0.5 * std::log(static_cast<double>(k)) -
                             static_cast<double>(k);
    if (std::isfinite(log_ratio)) r.max_ratio = std::max(r.max_ratio, std::exp(log_ratio));
  }
  return r;
}

}  // namespace areawalk::exact
