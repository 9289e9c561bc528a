#pragma once

// Randomized verification suites behind `maslovflow verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maslovflow/config.hpp"
#include "maslovflow/hamiltonian.hpp"

namespace mf {

struct CaseResult {
  std::string label;
  bool pass = false;
  Json detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;

  bool pass() const;
  int failures() const;
  // Cases whose label starts with `prefix`.
  std::vector<const CaseResult*> group(const std::string& prefix) const;
  bool group_pass(const std::string& prefix) const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int instances = 0;  // 0: suite default
  int steps = 256;
  double tol = 1e-8;
  int max_depth = 40;
  int base_intervals = 32;
  Execution exec = Execution::Parallel;

  MaslovOptions maslov() const;
  SpectralFlowOptions flow() const;
  HamiltonianOptions hamiltonian() const;
};

SuiteOptions suite_options(const ProblemConfig& c);

// Optional user instance taken from a config (pair, S, alpha/beta).
struct UserInstance {
  LagrangianPath gamma1;
  LagrangianPath gamma2;
  SymmetricFamily s;
  std::optional<PiecewiseLinear> alpha;
  std::optional<PiecewiseLinear> beta;
};
std::optional<UserInstance> user_instance(const ProblemConfig& c);

// sfl = maslov_pair with S = 0 (default 25 instances).
SuiteResult suite_clm(const SuiteOptions& o, const std::optional<UserInstance>& user = std::nullopt);
// sfl(A) = maslov(Psi gamma1, gamma2) (default 25).
SuiteResult suite_hamiltonian(const SuiteOptions& o, const std::optional<UserInstance>& user = std::nullopt);
// three-term formula plus the closed-endpoint collapse (default 25).
SuiteResult suite_three_term(const SuiteOptions& o, const std::optional<UserInstance>& user = std::nullopt);
// alpha/beta formula (default 25).
SuiteResult suite_alpha_beta(const SuiteOptions& o, const std::optional<UserInstance>& user = std::nullopt);
// Dirichlet family S = diag(lambda c, lambda c), c in {5, 15, 30}, plus random degree-1 S (default 5).
SuiteResult suite_morse(const SuiteOptions& o, const std::optional<UserInstance>& user = std::nullopt);
// Maslov index properties (default 50 per property).
SuiteResult suite_axioms(const SuiteOptions& o);
// Gap metric, Kato identity, shift and conjugation checks, discretized diagnostic (default 100 pairs).
SuiteResult suite_gap(const SuiteOptions& o);

SuiteResult run_suite(const std::string& which, const SuiteOptions& o, const std::optional<UserInstance>& user);
const std::vector<std::string>& suite_names();

}  // namespace mf
