#pragma once

// Maslov index of loops and of pairs of Lagrangian paths.
//
// For a pair (L1, L2) the relative unitary C = W1 conj(W2) (W = Souriau
// matrix) has eigenvalue 1 with multiplicity dim(L1 cap L2). The pair index
// is the net number of eigenphases of C(lambda) crossing 0 upwards. It is
// evaluated without tracking individual branches: if Delta is the continuous
// change of arg det C over [a, b] and phi_j in [0, 2 pi) are the principal
// eigenphases, then
//
//   count(a, b) = (Delta + sum_j phi_j(a) - sum_j phi_j(b)) / (2 pi).

#include <vector>

#include "maslovflow/path.hpp"

namespace mf {

struct MaslovOptions {
  double tol = kDefaultRankTol;  // admissibility / intersection threshold
  int max_depth = 40;
  int base_intervals = 32;
  double max_gap = 0.1;           // gap between consecutive samples of each path
  double max_phase_step = kPi / 2;  // arg det C increment per accepted step
  double theta_max = 0.25;
  double theta_min = 1e-6;
};

struct CrossingRecord {
  double lambda_star = 0.0;
  int sign = 0;
  int multiplicity = 0;
};

struct RelativeSample {
  double lambda = 0.0;
  Complex det{1.0, 0.0};
  Vec phases;  // principal eigenphases of C in [0, 2 pi)
};

// Relative unitary W1 conj(W2) and its spectral data.
CMat relative_unitary(const LagrangianFrame& l1, const LagrangianFrame& l2);
RelativeSample relative_sample(const LagrangianFrame& l1, const LagrangianFrame& l2, double lambda = 0.0);
// Signed eigenphases in (-pi, pi].
Vec relative_phases(const LagrangianFrame& l1, const LagrangianFrame& l2);

// Net upward crossings between two samples whose arg det C difference is
// known to be `delta`. Throws if the result is not within 1e-6 of an integer.
int net_crossings(const RelativeSample& a, const RelativeSample& b, double delta);

int maslov_loop(const LagrangianPath& loop, const MaslovOptions& opts = {});

bool is_admissible(const LagrangianPath& g1, const LagrangianPath& g2, double tol = kDefaultRankTol);

// Index of (g1, e^{-theta J} g2) counted directly; theta = 0 requires an admissible pair.
int maslov_pair_regularized(const LagrangianPath& g1, const LagrangianPath& g2, double theta,
                            const MaslovOptions& opts = {});

int maslov_pair(const LagrangianPath& g1, const LagrangianPath& g2, const MaslovOptions& opts = {});
int maslov_rel(const LagrangianPath& g, const LagrangianFrame& l0, const MaslovOptions& opts = {});

// Localized crossings of an admissible pair (for non-admissible pairs the
// crossings of the regularized pair). Sum of sign*multiplicity equals maslov_pair.
std::vector<CrossingRecord> crossing_list(const LagrangianPath& g1, const LagrangianPath& g2,
                                          double tol = 1e-10, const MaslovOptions& opts = {});

double perturbation_theta(const LagrangianPath& g1, const LagrangianPath& g2, const MaslovOptions& opts = {});

// Adaptive grid on [0, 1] such that consecutive samples of every path are
// within opts.max_gap in the gap metric.
std::vector<double> adaptive_grid(const std::vector<LagrangianPath>& paths, const MaslovOptions& opts = {});

}  // namespace mf
