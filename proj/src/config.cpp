#include "maslovflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mf {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where, what); }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "number is not finite");
  return v;
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()) && it.key().rfind("_", 0) != 0) fail(where + "." + it.key(), "unknown field");
}

Json canonical_matrix(const Json& j, const std::string& where) { return matrix_json(parse_matrix(j, where)); }

Json canonical_piecewise(const Json& j, const std::string& where) {
  const PiecewiseLinear f = build_piecewise(j, where);
  Json out = Json::array();
  for (const auto& [x, y] : f.points()) out.push_back(Json::array({x, y}));
  return out;
}

LagrangianFrame build_frame(const Json& j, int n, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "horizontal") return LagrangianFrame::horizontal(n);
    if (s == "vertical") return LagrangianFrame::vertical(n);
    fail(where, "unknown frame preset '" + s + "' (expected horizontal or vertical)");
  }
  const Mat b = parse_matrix(j, where);
  if (b.rows() != 2 * n || b.cols() != n)
    fail(where, "basis must be " + std::to_string(2 * n) + " x " + std::to_string(n));
  try {
    return frame_from_basis(b);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json canonical_frame(const Json& j, int n, const std::string& where) {
  build_frame(j, n, where);
  return j.is_string() ? j : canonical_matrix(j, where);
}

Json canonical_path(const Json& d, int n, const std::string& where) {
  if (!d.is_object()) fail(where, "path descriptor must be an object");
  const Json& type_j = field(d, "type", where);
  if (!type_j.is_string()) fail(where + ".type", "expected a string");
  const std::string type = type_j.get<std::string>();
  Json out;
  out["type"] = type;
  if (type == "gamma_nor" || type == "gamma_nor_prime") {
    only_keys(d, {"type"}, where);
  } else if (type == "constant") {
    only_keys(d, {"type", "frame"}, where);
    out["frame"] = canonical_frame(field(d, "frame", where), n, where + ".frame");
  } else if (type == "rotation") {
    only_keys(d, {"type", "base", "theta"}, where);
    out["base"] = canonical_frame(field(d, "base", where), n, where + ".base");
    out["theta"] = canonical_piecewise(field(d, "theta", where), where + ".theta");
  } else if (type == "unitary_diagonal") {
    only_keys(d, {"type", "phases"}, where);
    const Json& ph = field(d, "phases", where);
    if (!ph.is_array() || static_cast<int>(ph.size()) != n) fail(where + ".phases", "expected n phase functions");
    out["phases"] = Json::array();
    for (std::size_t i = 0; i < ph.size(); ++i)
      out["phases"].push_back(canonical_piecewise(ph[i], where + ".phases[" + std::to_string(i) + "]"));
  } else if (type == "symplectic_exp") {
    only_keys(d, {"type", "base", "generator", "scale"}, where);
    out["base"] = canonical_frame(field(d, "base", where), n, where + ".base");
    const Mat k = parse_matrix(field(d, "generator", where), where + ".generator");
    if (k.rows() != 2 * n || k.cols() != 2 * n) fail(where + ".generator", "generator must be 2n x 2n");
    if ((k - k.transpose()).norm() > 1e-12 * std::max(1.0, k.norm())) fail(where + ".generator", "not symmetric");
    out["generator"] = matrix_json(k);
    out["scale"] = canonical_piecewise(field(d, "scale", where), where + ".scale");
  } else if (type == "concat") {
    only_keys(d, {"type", "pieces"}, where);
    const Json& pieces = field(d, "pieces", where);
    if (!pieces.is_array() || pieces.empty()) fail(where + ".pieces", "expected a nonempty array");
    out["pieces"] = Json::array();
    for (std::size_t i = 0; i < pieces.size(); ++i)
      out["pieces"].push_back(canonical_path(pieces[i], n, where + ".pieces[" + std::to_string(i) + "]"));
  } else if (type == "reparam") {
    only_keys(d, {"type", "path", "map"}, where);
    out["path"] = canonical_path(field(d, "path", where), n, where + ".path");
    out["map"] = canonical_piecewise(field(d, "map", where), where + ".map");
  } else if (type == "reverse") {
    only_keys(d, {"type", "path"}, where);
    out["path"] = canonical_path(field(d, "path", where), n, where + ".path");
  } else {
    fail(where + ".type", "unknown path type '" + type + "'");
  }
  return out;
}

Json canonical_family(const Json& d, int n, const std::string& where) {
  build_family(d, n, where);
  Json out;
  out["terms"] = Json::array();
  for (const auto& t : field(d, "terms", where)) {
    Json term;
    term["lambda_power"] = t.value("lambda_power", 0);
    term["t_power"] = t.value("t_power", 0);
    term["coefficient"] = canonical_matrix(t.at("coefficient"), where);
    out["terms"].push_back(term);
  }
  return out;
}

}  // namespace

Mat parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(where, "rows must be nonempty arrays");
  Mat m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) fail(rw, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

Json matrix_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

PiecewiseLinear build_piecewise(const Json& j, const std::string& where) {
  if (j.is_number()) return PiecewiseLinear::constant(number(j, where));
  if (!j.is_array() || j.empty()) fail(where, "expected a number or a list of [x, y] breakpoints");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(w, "breakpoint must be [x, y]");
    pts.emplace_back(number(j[i][0], w + "[0]"), number(j[i][1], w + "[1]"));
  }
  try {
    return PiecewiseLinear(std::move(pts));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

LagrangianPath build_path(const Json& d, int n, const std::string& where) {
  const Json c = canonical_path(d, n, where);
  const std::string type = c.at("type").get<std::string>();
  try {
    if (type == "gamma_nor") return LagrangianPath::gamma_nor(n);
    if (type == "gamma_nor_prime") return LagrangianPath::gamma_nor_prime(n);
    if (type == "constant") return LagrangianPath::constant(build_frame(c.at("frame"), n, where + ".frame"));
    if (type == "rotation")
      return LagrangianPath::rotation(build_frame(c.at("base"), n, where + ".base"),
                                      build_piecewise(c.at("theta"), where + ".theta"));
    if (type == "unitary_diagonal") {
      std::vector<PiecewiseLinear> phases;
      for (const auto& p : c.at("phases")) phases.push_back(build_piecewise(p, where + ".phases"));
      return LagrangianPath::unitary_diagonal(std::move(phases));
    }
    if (type == "symplectic_exp")
      return LagrangianPath::symplectic_exp(build_frame(c.at("base"), n, where + ".base"),
                                            parse_matrix(c.at("generator"), where + ".generator"),
                                            build_piecewise(c.at("scale"), where + ".scale"));
    if (type == "concat") {
      std::vector<LagrangianPath> pieces;
      for (std::size_t i = 0; i < c.at("pieces").size(); ++i)
        pieces.push_back(build_path(c.at("pieces")[i], n, where + ".pieces[" + std::to_string(i) + "]"));
      return LagrangianPath::concat(std::move(pieces));
    }
    if (type == "reparam")
      return LagrangianPath::reparametrize(build_path(c.at("path"), n, where + ".path"),
                                           build_piecewise(c.at("map"), where + ".map"));
    if (type == "reverse") return build_path(c.at("path"), n, where + ".path").reversed();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where + ".type", "unknown path type '" + type + "'");
}

SymmetricFamily build_family(const Json& d, int n, const std::string& where) {
  if (!d.is_object()) fail(where, "expected an object with 'terms'");
  only_keys(d, {"terms"}, where);
  const Json& terms = field(d, "terms", where);
  if (!terms.is_array()) fail(where + ".terms", "expected an array");
  std::vector<SymmetricFamily::Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string w = where + ".terms[" + std::to_string(i) + "]";
    const Json& t = terms[i];
    if (!t.is_object()) fail(w, "expected an object");
    only_keys(t, {"lambda_power", "t_power", "coefficient"}, w);
    SymmetricFamily::Term term;
    term.lambda_power = t.contains("lambda_power") ? integer(t["lambda_power"], w + ".lambda_power") : 0;
    term.t_power = t.contains("t_power") ? integer(t["t_power"], w + ".t_power") : 0;
    term.coefficient = parse_matrix(field(t, "coefficient", w), w + ".coefficient");
    const Mat& c = term.coefficient;
    if (c.rows() != 2 * n || c.cols() != 2 * n) fail(w + ".coefficient", "must be 2n x 2n");
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff()))
      fail(w + ".coefficient", "matrix is not symmetric");
    out.push_back(std::move(term));
  }
  try {
    return SymmetricFamily(n, std::move(out));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

ProblemConfig parse_config(const Json& j) {
  if (!j.is_object()) fail("<root>", "expected a JSON object");
  only_keys(j, {"n", "gamma1", "gamma2", "S", "alpha", "beta", "settings", "seed", "description"}, "<root>");
  ProblemConfig c;
  c.n = integer(field(j, "n", "<root>"), "n");
  if (c.n < 1 || c.n > 8) fail("n", "must be between 1 and 8");
  if (j.contains("gamma1")) c.gamma1 = canonical_path(j["gamma1"], c.n, "gamma1");
  if (j.contains("gamma2")) c.gamma2 = canonical_path(j["gamma2"], c.n, "gamma2");
  if (c.gamma1.has_value() != c.gamma2.has_value()) fail("<root>", "gamma1 and gamma2 must be given together");
  if (j.contains("S")) c.s = canonical_family(j["S"], c.n, "S");
  if (j.contains("alpha") != j.contains("beta")) fail("<root>", "alpha and beta must be given together");
  if (j.contains("alpha")) {
    c.alpha = canonical_piecewise(j["alpha"], "alpha");
    c.beta = canonical_piecewise(j["beta"], "beta");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      fail("seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("settings")) {
    const Json& s = j["settings"];
    if (!s.is_object()) fail("settings", "expected an object");
    only_keys(s, {"steps", "tol", "max_depth", "mu_window", "lambda_samples", "base_intervals", "shift", "instances"},
              "settings");
    Settings& st = c.settings;
    if (s.contains("steps")) st.steps = integer(s["steps"], "settings.steps");
    if (s.contains("tol")) st.tol = number(s["tol"], "settings.tol");
    if (s.contains("max_depth")) st.max_depth = integer(s["max_depth"], "settings.max_depth");
    if (s.contains("lambda_samples")) st.lambda_samples = integer(s["lambda_samples"], "settings.lambda_samples");
    if (s.contains("base_intervals")) st.base_intervals = integer(s["base_intervals"], "settings.base_intervals");
    if (s.contains("shift")) st.shift = number(s["shift"], "settings.shift");
    if (s.contains("instances")) st.instances = integer(s["instances"], "settings.instances");
    if (s.contains("mu_window")) {
      const Json& w = s["mu_window"];
      if (!w.is_array() || w.size() != 2) fail("settings.mu_window", "expected [mu_min, mu_max]");
      st.mu_min = number(w[0], "settings.mu_window[0]");
      st.mu_max = number(w[1], "settings.mu_window[1]");
    }
  }
  const Settings& st = c.settings;
  if (st.steps < 64) fail("settings.steps", "must be at least 64");
  if (!(st.tol > 0.0 && st.tol < 1e-2)) fail("settings.tol", "must lie in (0, 1e-2)");
  if (st.max_depth < 1 || st.max_depth > 60) fail("settings.max_depth", "must lie in [1, 60]");
  if (!(st.mu_min < st.mu_max)) fail("settings.mu_window", "mu_min must be below mu_max");
  if (st.lambda_samples < 2) fail("settings.lambda_samples", "must be at least 2");
  if (st.base_intervals < 1) fail("settings.base_intervals", "must be positive");
  if (st.shift < 0.0) fail("settings.shift", "must be nonnegative");
  if (st.instances < 0) fail("settings.instances", "must be nonnegative");
  return c;
}

ProblemConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                      pos == std::string::npos ? what : what.substr(pos));
  }
  return parse_config(j);
}

ProblemConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

Json to_json(const ProblemConfig& c) {
  Json j;
  j["n"] = c.n;
  if (c.gamma1) j["gamma1"] = *c.gamma1;
  if (c.gamma2) j["gamma2"] = *c.gamma2;
  if (c.s) j["S"] = *c.s;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.beta) j["beta"] = *c.beta;
  const Settings& s = c.settings;
  j["settings"] = {{"steps", s.steps},
                   {"tol", s.tol},
                   {"max_depth", s.max_depth},
                   {"mu_window", Json::array({s.mu_min, s.mu_max})},
                   {"lambda_samples", s.lambda_samples},
                   {"base_intervals", s.base_intervals},
                   {"shift", s.shift},
                   {"instances", s.instances}};
  j["seed"] = c.seed;
  return j;
}

LagrangianPath ProblemConfig::path1() const {
  if (!gamma1) throw ConfigError("gamma1", "this command needs gamma1 and gamma2");
  return build_path(*gamma1, n, "gamma1");
}

LagrangianPath ProblemConfig::path2() const {
  if (!gamma2) throw ConfigError("gamma2", "this command needs gamma1 and gamma2");
  return build_path(*gamma2, n, "gamma2");
}

SymmetricFamily ProblemConfig::family() const {
  if (!s) return SymmetricFamily::zero(n);
  return build_family(*s, n, "S");
}

PiecewiseLinear ProblemConfig::alpha_function() const {
  if (!alpha) throw ConfigError("alpha", "this command needs alpha and beta");
  return build_piecewise(*alpha, "alpha");
}

PiecewiseLinear ProblemConfig::beta_function() const {
  if (!beta) throw ConfigError("beta", "this command needs alpha and beta");
  return build_piecewise(*beta, "beta");
}

}  // namespace mf
