#pragma once

// Finite-dimensional stand-in for gap continuity of lambda -> A_lambda.
// J u' + S u is discretized by forward differences on an N-point grid, the
// boundary conditions restrict the domain to u_0 in gamma1, u_{N-1} in gamma2,
// and graphs are compared in R^{2nN} x R^{2nN}.

#include <vector>

#include "maslovflow/specflow.hpp"

namespace mf {

struct GapSample {
  double lambda = 0.0;
  double graph_gap = 0.0;
  double boundary_distance = 0.0;  // ||P1 - P1(lambda0)|| + ||P2 - P2(lambda0)||
  double ratio = 0.0;              // graph_gap / boundary_distance; inf if the distance vanishes
};

struct GapDiagnosticReport {
  double lambda0 = 0.0;
  int grid = 0;
  std::vector<GapSample> samples;
  double max_ratio = 0.0;      // over samples with nonzero boundary distance
  bool ratio_bounded = false;  // max_ratio <= 100
  bool monotone = false;       // gaps strictly decrease as |lambda - lambda0| shrinks
  bool pass() const { return ratio_bounded && monotone; }
};

// Orthonormal basis of the discretized graph at lambda.
Mat discretized_graph(const BoundaryValueFamily& fam, double lambda, int grid);

GapDiagnosticReport discretized_gap_diagnostic(const BoundaryValueFamily& fam, double lambda0,
                                               const std::vector<double>& lambdas, int grid = 64);

}  // namespace mf
