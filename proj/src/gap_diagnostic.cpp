#include "maslovflow/gap_diagnostic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mf {

namespace {

Mat difference_operator(const SymmetricFamily& s, double lambda, int n, int grid) {
  const int d = 2 * n;
  const double h = 1.0 / (grid - 1);
  const Mat j = standard_j(n);
  Mat t = Mat::Zero(d * grid, d * grid);
  for (int i = 0; i < grid; ++i) {
    const int lo = i < grid - 1 ? i : grid - 2;  // last row: backward difference
    t.block(d * i, d * (lo + 1), d, d) += j / h;
    t.block(d * i, d * lo, d, d) -= j / h;
    if (!s.is_zero()) t.block(d * i, d * i, d, d) += s(lambda, i * h);
  }
  return t;
}

Mat domain_basis(const LagrangianFrame& f1, const LagrangianFrame& f2, int grid) {
  const int n = f1.n();
  const int d = 2 * n;
  const int cols = n + d * (grid - 2) + n;
  Mat b = Mat::Zero(d * grid, cols);
  b.block(0, 0, d, n) = f1.matrix();
  b.block(d, n, d * (grid - 2), d * (grid - 2)).setIdentity();
  b.block(d * (grid - 1), cols - n, d, n) = f2.matrix();
  return b;
}

}  // namespace

Mat discretized_graph(const BoundaryValueFamily& fam, double lambda, int grid) {
  if (grid < 32) throw Error("discretized_gap_diagnostic: grid size must be at least 32");
  const LagrangianFrame f1 = fam.gamma1()(lambda);
  const LagrangianFrame f2 = fam.gamma2()(lambda);
  const Mat b = domain_basis(f1, f2, grid);
  const Mat tb = difference_operator(fam.s(), lambda, fam.n(), grid) * b;
  Mat graph(2 * b.rows(), b.cols());
  graph << b, tb;
  try {
    return orthonormalize(graph);
  } catch (const Error&) {
    throw Error("discretized_gap_diagnostic: singular discretization");
  }
}

GapDiagnosticReport discretized_gap_diagnostic(const BoundaryValueFamily& fam, double lambda0,
                                               const std::vector<double>& lambdas, int grid) {
  GapDiagnosticReport r;
  r.lambda0 = lambda0;
  r.grid = grid;
  const Subspace base = Subspace::from_orthonormal(discretized_graph(fam, lambda0, grid));
  const Mat p1 = fam.gamma1()(lambda0).projector();
  const Mat p2 = fam.gamma2()(lambda0).projector();
  for (double l : lambdas) {
    GapSample s;
    s.lambda = l;
    s.graph_gap = gap_distance(Subspace::from_orthonormal(discretized_graph(fam, l, grid)), base);
    s.boundary_distance = op_norm(fam.gamma1()(l).projector() - p1) + op_norm(fam.gamma2()(l).projector() - p2);
    s.ratio = s.boundary_distance > 0.0 ? s.graph_gap / s.boundary_distance
                                        : (s.graph_gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (s.boundary_distance > 0.0) r.max_ratio = std::max(r.max_ratio, s.ratio);
    r.samples.push_back(s);
  }
  r.ratio_bounded = r.max_ratio <= 100.0;

  std::vector<GapSample> ordered = r.samples;
  std::sort(ordered.begin(), ordered.end(), [&](const GapSample& a, const GapSample& b) {
    return std::abs(a.lambda - lambda0) > std::abs(b.lambda - lambda0);
  });
  r.monotone = true;
  for (std::size_t i = 1; i < ordered.size(); ++i)
    if (!(ordered[i].graph_gap < ordered[i - 1].graph_gap)) r.monotone = false;
  return r;
}

}  // namespace mf
