#pragma once

// JSON problem configuration. Matrices are row-major nested arrays, angles are
// radians, piecewise-linear functions are lists of [x, y] breakpoints.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maslovflow/path.hpp"
#include "maslovflow/symmetric_family.hpp"

namespace mf {

using Json = nlohmann::ordered_json;

// Parse or validation failure; `where` is a field path or "line L, column C".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : Error("config error at " + where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct Settings {
  int steps = 256;
  double tol = 1e-8;
  int max_depth = 40;
  double mu_min = -kPi + 0.1;
  double mu_max = kPi - 0.1;
  int lambda_samples = 101;
  int base_intervals = 32;
  double shift = 0.0;
  int instances = 0;  // randomized instances per suite; 0 selects the suite default
};

struct ProblemConfig {
  int n = 0;
  std::optional<Json> gamma1;  // canonical path descriptors
  std::optional<Json> gamma2;
  std::optional<Json> s;
  std::optional<Json> alpha;
  std::optional<Json> beta;
  Settings settings;
  std::uint64_t seed = 1;

  bool has_pair() const { return gamma1.has_value() && gamma2.has_value(); }
  LagrangianPath path1() const;
  LagrangianPath path2() const;
  SymmetricFamily family() const;  // zero family when absent
  PiecewiseLinear alpha_function() const;
  PiecewiseLinear beta_function() const;
};

ProblemConfig parse_config(const Json& j);
ProblemConfig parse_config_text(const std::string& text);
ProblemConfig load_config(const std::string& file);
Json to_json(const ProblemConfig& c);

// Descriptor -> path, validating against dimension n.
LagrangianPath build_path(const Json& descriptor, int n, const std::string& where = "path");
SymmetricFamily build_family(const Json& descriptor, int n, const std::string& where = "S");
PiecewiseLinear build_piecewise(const Json& points, const std::string& where);
Mat parse_matrix(const Json& j, const std::string& where);
Json matrix_json(const Mat& m);

}  // namespace mf
