#pragma once

// Seeded generators for randomized test and verification suites.

#include <cstdint>
#include <random>
#include <vector>

#include "maslovflow/path.hpp"
#include "maslovflow/symmetric_family.hpp"

namespace mf {

using Rng = std::mt19937_64;

// Independent stream for instance `index` of a suite seeded with `seed`.
Rng instance_rng(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

Mat random_orthogonal(int n, Rng& rng);
Mat random_symmetric(int dim, Rng& rng, double scale = 1.0);
// exp(J K) with K symmetric of spectral norm at most `scale`.
Mat random_symplectic(int n, Rng& rng, double scale = 1.0);
LagrangianFrame random_frame(int n, Rng& rng);

// Piecewise-linear function on [0, 1] with `pieces` pieces and values in [lo, hi].
PiecewiseLinear random_piecewise(Rng& rng, int pieces, double lo, double hi);
// Strictly increasing piecewise-linear bijection of [0, 1].
PiecewiseLinear random_reparametrization(Rng& rng, int pieces = 3);

enum class PathKind { Rotation, UnitaryDiagonal, SymplecticExp, SymplecticAction };

LagrangianPath random_path(int n, Rng& rng, PathKind kind);
LagrangianPath random_path(int n, Rng& rng);  // kind drawn uniformly

struct PathPair {
  LagrangianPath first;
  LagrangianPath second;
};

// Pair whose endpoint relative eigenphases all stay at least `margin` away from 0.
PathPair random_admissible_pair(int n, Rng& rng, double margin = 0.05);
// Pair with a nontrivial intersection at lambda = 0, lambda = 1 or both.
PathPair random_nonadmissible_pair(int n, Rng& rng);
// gamma2 = e^{theta(lambda) J} gamma1 with theta in [0.3, pi - 0.3]: transversal for every lambda.
PathPair random_transversal_pair(int n, Rng& rng);

// Polynomial family with degrees at most `degree` and sup norm at most `bound`.
SymmetricFamily random_symmetric_family(int n, Rng& rng, int degree, double bound = 3.0);

}  // namespace mf
