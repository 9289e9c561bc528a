#pragma once

// Linear Hamiltonian systems J u' + S_lambda(t) u = 0 and the spectral-flow
// formulas relating the operator family to Maslov indices of paths built
// from the fundamental solution.

#include <string>
#include <utility>
#include <vector>

#include "maslovflow/specflow.hpp"

namespace mf {

// Psi_lambda(t) with J Psi' + S_lambda Psi = 0, Psi(0) = I, i.e. Psi' = J S Psi.
class FundamentalSolution {
 public:
  FundamentalSolution(SymmetricFamily s, double lambda, int steps = 256);

  double lambda() const { return lambda_; }
  int steps() const { return steps_; }
  const std::vector<Mat>& samples() const { return values_; }
  double max_symplectic_defect() const { return max_defect_; }

  // Psi(t) for t in [0, 1]; between grid points one partial RK4 step is taken.
  Mat at(double t) const;
  Mat end() const { return values_.back(); }

 private:
  SymmetricFamily s_;
  double lambda_;
  int steps_;
  std::vector<Mat> values_;
  double max_defect_ = 0.0;
};

FundamentalSolution fundamental_solution(const SymmetricFamily& s, double lambda, int steps = 256);

// lambda -> Psi_lambda(1) gamma(lambda)
LagrangianPath psi_end_path(const SymmetricFamily& s, const LagrangianPath& gamma, int steps = 256);
// t -> Psi_lambda(t) L
LagrangianPath psi_time_path(const FundamentalSolution& psi, const LagrangianFrame& l);

struct IdentityCheck {
  std::string name;
  int lhs = 0;
  int rhs = 0;
  std::vector<std::pair<std::string, int>> terms;
  std::vector<std::string> notes;
  bool pass() const { return lhs == rhs; }
};

struct HamiltonianOptions {
  int steps = 256;
  MaslovOptions maslov{};
  SpectralFlowOptions flow{};
};

// sfl(A) against mu(Psi gamma1, gamma2).
IdentityCheck clm_hamiltonian(const SymmetricFamily& s, const LagrangianPath& g1, const LagrangianPath& g2,
                              const HamiltonianOptions& opts = {});

// sfl(A) against mu(Psi_1(.) g1(1), g2(1)) + mu(g1, g2) - mu(Psi_0(.) g1(0), g2(0)).
IdentityCheck three_term_identity(const SymmetricFamily& s, const LagrangianPath& g1, const LagrangianPath& g2,
                                  const HamiltonianOptions& opts = {});

// alpha, beta: [0,1] -> [0,1] piecewise linear with beta(lambda) = alpha(lambda) + lambda.
void validate_alpha_beta(const PiecewiseLinear& alpha, const PiecewiseLinear& beta);

IdentityCheck alpha_beta_identity(const SymmetricFamily& s, const LagrangianPath& g1, const LagrangianPath& g2,
                                  const PiecewiseLinear& alpha, const PiecewiseLinear& beta,
                                  const HamiltonianOptions& opts = {});

// Both boundary conditions {0} x R^n: sfl(A) against mu(Psi({0} x R^n), {0} x R^n).
IdentityCheck morse_index_formula(const SymmetricFamily& s, const HamiltonianOptions& opts = {});

}  // namespace mf
