#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "maslovflow/commands.hpp"
#include "maslovflow/config.hpp"

using namespace mf;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kFull = R"({
  "n": 2,
  "description": "every path type",
  "_note": "underscore keys are ignored",
  "gamma1": {"type": "concat", "pieces": [
      {"type": "rotation", "base": "horizontal", "theta": [[0, 0], [0.5, 0.3], [1, 0]]},
      {"type": "reverse", "path": {"type": "unitary_diagonal", "phases": [[[0, 0.4], [1, 0]], 0.0]}}]},
  "gamma2": {"type": "reparam",
             "path": {"type": "symplectic_exp", "base": "vertical",
                      "generator": [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]],
                      "scale": [[0, 0], [1, 0.5]]},
             "map": [[0, 0], [0.3, 0.6], [1, 1]]},
  "S": {"terms": [{"lambda_power": 1, "t_power": 2,
                   "coefficient": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}]},
  "alpha": [[0, 0.5], [1, 0]],
  "beta": [[0, 0.5], [1, 1]],
  "settings": {"steps": 128, "tol": 1e-9, "max_depth": 30, "mu_window": [-2, 2], "lambda_samples": 11,
               "base_intervals": 16, "shift": 0.1, "instances": 3},
  "seed": 42
})";

using Row = std::tuple<double, double, int>;

std::vector<Row> parse_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    Row r;
    char c1, c2;
    std::istringstream ls(line);
    ls >> std::get<0>(r) >> c1 >> std::get<1>(r) >> c2 >> std::get<2>(r);
    rows.push_back(r);
  }
  return rows;
}

bool has_row(const std::vector<Row>& rows, double lambda, double mu, int mult) {
  for (const auto& [l, m, k] : rows)
    if (std::abs(l - lambda) < 1e-12 && std::abs(m - mu) < 1e-8 && k == mult) return true;
  return false;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("full configuration parses and round-trips") {
    const ProblemConfig c = parse_config_text(kFull);
    CHECK(c.n == 2);
    CHECK(c.seed == 42);
    CHECK(c.settings.steps == 128);
    CHECK(c.settings.mu_min == -2.0);
    CHECK(c.settings.instances == 3);
    CHECK(c.has_pair());
    CHECK(c.path1().n() == 2);
    CHECK(c.path2().n() == 2);
    CHECK(c.family().terms().size() == 1);
    CHECK(c.alpha_function()(0.0) == 0.5);
    CHECK(c.beta_function()(1.0) == 1.0);
    // Paths still meet at the concatenation point.
    CHECK(gap_distance(c.path1()(0.5), c.path1()(0.5 - 1e-9)) < 1e-6);

    const Json once = to_json(c);
    const ProblemConfig again = parse_config(once);
    CHECK(to_json(again) == once);
    for (double l : {0.0, 0.3, 0.77, 1.0}) {
      CHECK(gap_distance(again.path1()(l), c.path1()(l)) < 1e-14);
      CHECK(gap_distance(again.path2()(l), c.path2()(l)) < 1e-14);
    }
  }

  TEST_CASE("defaults") {
    const ProblemConfig c = parse_config_text(R"({"n": 1})");
    CHECK(c.settings.steps == 256);
    CHECK(c.settings.tol == 1e-8);
    CHECK(c.seed == 1);
    CHECK_FALSE(c.has_pair());
    CHECK(c.family().is_zero());
    CHECK_THROWS_AS(c.path1(), ConfigError);
    CHECK_THROWS_AS(c.alpha_function(), ConfigError);
  }

  TEST_CASE("syntax errors report line and column") {
    const std::string e = error_of("{\n  \"n\": 1,\n  \"gamma1\": }\n");
    CHECK(e.find("line 3") != std::string::npos);
    CHECK(e.find("column") != std::string::npos);
  }

  TEST_CASE("validation errors name the field") {
    CHECK(error_of(R"({"n": 0})").find("n") != std::string::npos);
    CHECK(error_of(R"({"n": 9})") != "");
    CHECK(error_of(R"({})").find("n") != std::string::npos);
    CHECK(error_of(R"({"n": 1, "bogus": 1})").find("bogus") != std::string::npos);
    CHECK(error_of(R"({"n": 1, "settings": {"steps": 10}})").find("steps") != std::string::npos);
    CHECK(error_of(R"({"n": 1, "settings": {"tol": 0.5}})").find("tol") != std::string::npos);
    CHECK(error_of(R"({"n": 1, "settings": {"tol": 0}})") != "");
    CHECK(error_of(R"({"n": 1, "gamma1": {"type": "spiral"}})").find("spiral") != std::string::npos);
    CHECK(error_of(R"({"n": 1, "gamma1": {"type": "constant"}})").find("frame") != std::string::npos);
    CHECK(error_of(R"({"n": 1, "gamma1": {"type": "constant", "frame": [[1], [1], [0]]}})") != "");
    // span{(1, 0, 1, 0)... } style non-Lagrangian basis
    CHECK(error_of(R"({"n": 2, "gamma1": {"type": "constant", "frame": [[1, 0], [0, 0], [0, 1], [0, 0]]}})") != "");
    CHECK(error_of(R"({"n": 1, "gamma1": {"type": "rotation", "base": "horizontal", "theta": [[0, 0], [0, 1]]}})") != "");
    CHECK(error_of(R"({"n": 1, "S": {"terms": [{"lambda_power": 7, "coefficient": [[1, 0], [0, 1]]}]}})") != "");
    CHECK(error_of(R"({"n": 1, "S": {"terms": [{"coefficient": [[1, 2], [0, 1]]}]}})") != "");
    CHECK(error_of(R"({"n": 1, "gamma1": {"type": "concat", "pieces": [{"type": "gamma_nor"}, {"type": "gamma_nor_prime"}]}})") != "");
  }

  TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  }
}

TEST_SUITE("commands") {
  const char* kNormalization =
      R"({"n": 2, "gamma1": {"type": "gamma_nor"}, "gamma2": {"type": "constant", "frame": "vertical"},
          "settings": {"lambda_samples": 5}})";

  TEST_CASE("maslov and sflow reports") {
    const ProblemConfig c = parse_config_text(kNormalization);
    const CommandOutput m = run_command("maslov", c);
    CHECK(m.pass);
    CHECK(m.report["result"]["value"] == 1);
    CHECK(m.report["result"]["admissible"] == true);
    CHECK(m.report["result"]["crossings"].size() == 1);
    CHECK(m.report.contains("timing"));
    CHECK(m.report["settings"]["steps"] == 256);
    const CommandOutput s = run_command("sflow", c);
    CHECK(s.pass);
    CHECK(s.report["result"]["value"] == 1);
    CHECK(s.report["result"]["doubled_resolution_value"] == 1);
    CHECK(s.csv.rfind("lambda,mu,multiplicity\n", 0) == 0);
  }

  TEST_CASE("reports are deterministic apart from timing") {
    const ProblemConfig c = parse_config_text(kNormalization);
    for (const char* cmd : {"maslov", "sflow", "spectra"}) {
      const CommandOutput a = run_command(cmd, c), b = run_command(cmd, c);
      CHECK(strip_timing(a.report).dump() == strip_timing(b.report).dump());
      CHECK(a.csv == b.csv);
    }
  }

  TEST_CASE("spectra CSV") {
    const ProblemConfig c = parse_config_text(kNormalization);
    const CommandOutput out = run_command("spectra", c);
    CHECK(out.pass);
    CHECK(out.csv.rfind("lambda,mu,multiplicity\n", 0) == 0);
    CHECK(out.report["result"]["lambdas"].size() == 5);
    const auto rows = parse_csv(out.csv);
    // lambda = 0.5: eigenvalues -pi/2, 0, pi/2.
    CHECK(has_row(rows, 0.5, -kPi / 2, 1));
    CHECK(has_row(rows, 0.5, 0.0, 1));
    CHECK(has_row(rows, 0.5, kPi / 2, 1));
    CHECK(static_cast<int>(rows.size()) == out.report["result"]["rows"].get<int>());
  }

  TEST_CASE("an empty window gives a header-only CSV") {
    const ProblemConfig c = parse_config_text(
        R"({"n": 1, "gamma1": {"type": "constant", "frame": "horizontal"},
            "gamma2": {"type": "constant", "frame": "vertical"},
            "settings": {"mu_window": [-1, 1], "lambda_samples": 3}})");
    const CommandOutput out = run_command("spectra", c);
    CHECK(out.csv == "lambda,mu,multiplicity\n");
  }

  TEST_CASE("shift setting moves every CSV row by the shift") {
    ProblemConfig c = parse_config_text(
        R"({"n": 1, "gamma1": {"type": "constant", "frame": "horizontal"},
            "gamma2": {"type": "constant", "frame": "vertical"},
            "settings": {"mu_window": [-3, 3], "lambda_samples": 2}})");
    const auto base = parse_csv(run_command("spectra", c).csv);
    c.settings.shift = 0.1;
    c.settings.mu_min += 0.1;
    c.settings.mu_max += 0.1;
    const auto shifted = parse_csv(run_command("spectra", c).csv);
    REQUIRE(base.size() == 4);
    REQUIRE(shifted.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(std::get<0>(shifted[i]) == std::get<0>(base[i]));
      CHECK(std::abs(std::get<1>(shifted[i]) - std::get<1>(base[i]) - 0.1) < 1e-7);
      CHECK(std::get<2>(shifted[i]) == std::get<2>(base[i]));
    }
    CHECK(has_row(base, 0.0, -kPi / 2, 1));
    CHECK(has_row(shifted, 1.0, kPi / 2 + 0.1, 1));
  }

  TEST_CASE("unknown command and suite") {
    const ProblemConfig c = parse_config_text(kNormalization);
    CHECK_THROWS_AS(run_command("frobnicate", c), Error);
    CHECK_THROWS_AS(run_command("verify", c, "nope"), Error);
  }

  TEST_CASE("csv numbers") {
    CHECK(format_csv_number(0.5) == "0.5");
    CHECK(format_csv_number(1.0 / 3.0) == "0.333333333333");
  }
}
