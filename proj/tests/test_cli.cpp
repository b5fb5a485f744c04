#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "areawalk/cli.hpp"
#include "areawalk/run_config.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = areawalk::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

// Data lines of a CSV output: no metadata comments, header first.
std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto g = areawalk::parse_grid("0:1:0.01");
  CHECK(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(areawalk::parse_grid("0.1,0.5,0.9") == std::vector<double>{0.1, 0.5, 0.9});
  CHECK(areawalk::parse_grid("0.3") == std::vector<double>{0.3});
  CHECK_THROWS_AS(areawalk::parse_grid("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(areawalk::parse_grid("1:0:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(areawalk::parse_grid("0.5,0.2"), std::invalid_argument);
  CHECK_THROWS_AS(areawalk::parse_grid("a:b"), std::invalid_argument);
  CHECK_THROWS_AS(areawalk::parse_grid(""), std::invalid_argument);
}

TEST_CASE("RunConfig round-trips through JSON") {
  areawalk::RunConfig c;
  c.subcommand = "mc";
  c.seed = 12345678901234ULL;
  c.t = 0.37;
  c.model = "poisson";
  c.timing = true;
  const auto back = areawalk::RunConfig::from_json(nlohmann::json::parse(c.to_json().dump()));
  CHECK(back == c);
  CHECK(areawalk::RunConfig::from_json(nlohmann::json::object()) == areawalk::RunConfig{});
}

TEST_CASE("constants: table rows and cross-route failure path") {
  const auto r = run({"constants", "--n", "4"});
  CHECK(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "n,c_num,c_den,b_num,b_den,v_num,v_den");
  const std::vector<std::string> c{"1", "3/2", "3", "20/3"};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto cells = split(lines[i + 1]);
    const std::string value = cells[2] == "1" ? cells[1] : cells[1] + "/" + cells[2];
    CHECK(value == c[i]);
  }
  CHECK(csv_lines(run({"constants", "--n", "1"}).out).size() == 2);
  const auto bad = run({"constants", "--n", "4", "--inject-disagreement"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("disagreement") != std::string::npos);
}

TEST_CASE("usage and I/O errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"constants", "--n", "0"}).code == 2);
  CHECK(run({"constants", "--bogus"}).code == 2);
  CHECK(run({"mc", "--estimator", "Gn", "--t", "1.5", "--samples", "10"}).code == 2);
  CHECK(run({"mc", "--estimator", "unknown"}).code == 2);
  CHECK(run({"gfun", "--t-grid", "0:2:0.5"}).code == 2);
  CHECK(run({"constants", "--n", "3", "--out", "/nonexistent-dir/x.csv"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gfun over [0, 1] at step 0.01") {
  const auto r = run({"gfun", "--t-grid", "0:1:0.01"});
  CHECK(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 102);
  CHECK(lines[0] == "t,G,K,Gprime_ode,Gprime_series,Gprime_tail_bound");
  CHECK(split(lines[1])[1] == "1");
  CHECK(split(lines[101])[0] == "1");
  CHECK(split(lines[101])[1] == "0");
}

TEST_CASE("mc: G_1(0.5) and the JSON record") {
  const auto r = run({"mc", "--estimator", "Gn", "--t", "0.5", "--n", "1", "--samples", "200000", "--format",
                      "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& rec = doc.at("result");
  for (const char* key : {"estimator", "mean", "stderr", "samples", "seed", "wall_time_ms"}) {
    CHECK(rec.contains(key));
  }
  const double mean = rec.at("mean").get<double>();
  const double se = rec.at("stderr").get<double>();
  CHECK(std::abs(mean - std::exp(-0.5)) <= 4 * se);
  CHECK(rec.at("wall_time_ms").is_null());
  CHECK(doc.at("config").at("subcommand") == "mc");
  CHECK(areawalk::RunConfig::from_json(doc.at("config")).samples == 200000);

  const auto timed = run({"mc", "--estimator", "argmin", "--n", "3", "--k", "2", "--samples", "1000", "--format",
                          "json", "--timing"});
  CHECK(nlohmann::json::parse(timed.out).at("wall_time_ms").is_number());
}

TEST_CASE("identical configurations give byte-identical files") {
  const auto dir = std::filesystem::temp_directory_path() / "areawalk_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "k.csv").string();
  auto read = [&] {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::vector<std::string> args{"sticky", "--n",    "500",  "--replicates", "3",
                                      "--t-grid", "0:1.2:0.1", "--seed", "8", "--out", path};
  CHECK(run(args).code == 0);
  const auto first = read();
  CHECK(run(args).code == 0);
  CHECK(read() == first);
  CHECK(first.find("# config: ") != std::string::npos);
  CHECK(first.find("# tool: areawalk") != std::string::npos);

  const std::vector<std::string> mc_args{"mc", "--estimator", "G", "--t", "0.4", "--samples", "20000",
                                         "--threads", "2", "--format", "json"};
  CHECK(run(mc_args).out == run(mc_args).out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sticky: K curve falls to the 1/n scale just after t = 1") {
  const auto r = run({"sticky", "--n", "1000", "--model", "uniform", "--t-grid", "0:1.2:0.05", "--replicates",
                      "5"});
  CHECK(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 26);
  CHECK(lines[0] == "t,mean,stddev,n,replicates,model,seed");
  CHECK(std::stod(split(lines[1])[1]) == 1.0);
  const double at_half = std::stod(split(lines[11])[1]);
  CHECK(std::abs(at_half - 0.75) < 0.05);
  const double last = std::stod(split(lines.back())[1]);
  CHECK(last <= 10.0 / 1000.0);
}

TEST_CASE("orderstats and comparisons report agreement") {
  const auto r = run({"orderstats", "--n", "100", "--t", "0.5", "--samples", "50000", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("result").at("agree") == true);
  const auto c = run({"mc", "--estimator", "chaining", "--n", "4", "--k", "2", "--t", "0.4", "--samples",
                      "300000"});
  CHECK(c.code == 0);
}

TEST_CASE("matrices subcommand") {
  const auto r = run({"matrices", "--n", "3", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("result").at("passed") == true);
  CHECK(doc.at("result").at("L").at(2).at(1) == "-6");
}

TEST_CASE("verify quick lists every named check as passing") {
  const auto r = run({"verify", "--level", "quick", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& checks = doc.at("result").at("checks");
  CHECK(checks.size() >= 15);
  bool has_g = false;
  for (const auto& c : checks) {
    CHECK_MESSAGE(c.at("pass") == true, c.at("name").get<std::string>());
    has_g = has_g || c.at("name") == "G(0.5) MC vs closed form";
  }
  CHECK(has_g);
  CHECK(run({"verify", "--level", "medium"}).code == 2);
}
