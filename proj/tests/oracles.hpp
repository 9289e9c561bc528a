#pragma once

// Reference computations used only by the tests. They avoid the library's
// counting formulas so that agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "maslovflow/maslov.hpp"

namespace oracle {

using mf::Mat;

constexpr double pi = 3.14159265358979323846;

// Closed-form spectrum of J u' with u(0) in gamma_nor(lambda), u(1) in {0} x R^n
// (forward = true), or u(0) in R^n x {0}, u(1) in gamma_nor'(lambda).
// Returns (mu, multiplicity) sorted, restricted to the open interval (lo, hi).
inline std::vector<std::pair<double, int>> normalization_spectrum(bool forward, int n, double lambda, double lo,
                                                                  double hi) {
  std::vector<std::pair<double, int>> out;
  auto add = [&](double mu, int m) {
    if (m <= 0 || !(mu > lo && mu < hi)) return;
    for (auto& e : out)
      if (std::abs(e.first - mu) < 1e-9) {
        e.second += m;
        return;
      }
    out.emplace_back(mu, m);
  };
  for (int k = -10; k <= 10; ++k) {
    add(forward ? pi * lambda - pi / 2 + pi * k : -pi * lambda + pi / 2 + pi * k, 1);
    add(pi / 2 + k * pi, n - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Eigenvalues of W1 conj(W2), W = U U^T with U = X + iY.
inline Eigen::VectorXcd relative_eigenvalues(const mf::LagrangianFrame& a, const mf::LagrangianFrame& b) {
  const int n = a.n();
  auto w = [n](const mf::LagrangianFrame& f) {
    const Eigen::MatrixXcd u = f.matrix().topRows(n).cast<std::complex<double>>() +
                               std::complex<double>(0, 1) * f.matrix().bottomRows(n).cast<std::complex<double>>();
    return Eigen::MatrixXcd(u * u.transpose());
  };
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(w(a) * w(b).conjugate());
  return es.eigenvalues();
}

// Net number of eigenvalues of the relative unitary crossing 1 counterclockwise,
// by matching individual eigenvalues between consecutive samples of a fine grid.
// Only meaningful for admissible pairs.
inline int branch_tracking_maslov(const mf::LagrangianPath& g1, const mf::LagrangianPath& g2, int samples = 4000) {
  Eigen::VectorXcd prev = relative_eigenvalues(g1(0.0), g2(0.0));
  const int n = static_cast<int>(prev.size());
  int count = 0;
  for (int s = 1; s <= samples; ++s) {
    const double l = static_cast<double>(s) / samples;
    const Eigen::VectorXcd cur = relative_eigenvalues(g1(l), g2(l));
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
      int best = -1;
      double dist = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j)
        if (!used[j] && std::abs(cur(j) - prev(i)) < dist) {
          dist = std::abs(cur(j) - prev(i));
          best = j;
        }
      used[best] = true;
      const double a = std::arg(prev(i));
      const double b = std::arg(cur(best));
      // Crossing the positive real axis: the argument changes sign through 0.
      if (std::abs(b - a) < pi / 2) {
        if (a < 0 && b >= 0) ++count;
        if (a >= 0 && b < 0) --count;
      }
    }
    prev = cur;
  }
  return count;
}

// (x1, y1, x2, y2) -> (x1, x2, y1, -y2): takes the form w + (-w) on R^2n x R^2n to the standard one.
inline Mat product_embedding(int n) {
  Mat p = Mat::Zero(4 * n, 4 * n);
  for (int i = 0; i < n; ++i) {
    p(i, i) = 1.0;                    // x1
    p(n + i, 2 * n + i) = 1.0;        // x2
    p(2 * n + i, n + i) = 1.0;        // y1
    p(3 * n + i, 3 * n + i) = -1.0;   // -y2
  }
  return p;
}

// Index of the pair as the index of the product path gamma1 x gamma2 against the
// diagonal in (R^2n x R^2n, w + (-w)).
inline int product_diagonal_maslov(const mf::LagrangianPath& g1, const mf::LagrangianPath& g2) {
  const int n = g1.n();
  const Mat p = product_embedding(n);
  auto product = [n, p, g1, g2](double l) {
    Mat f = Mat::Zero(4 * n, 2 * n);
    f.block(0, 0, 2 * n, n) = g1(l).matrix();
    f.block(2 * n, n, 2 * n, n) = g2(l).matrix();
    return Mat(p * f);
  };
  Mat diag(4 * n, 2 * n);
  diag << Mat::Identity(2 * n, 2 * n), Mat::Identity(2 * n, 2 * n);
  const mf::LagrangianFrame delta = mf::frame_from_basis(p * diag);
  // The product path as a symplectic action on its value at lambda = 0.
  const mf::LagrangianPath prod = mf::LagrangianPath::symplectic_action(
      [n, g1, g2](double l) {
        // Block-diagonal symplectic maps taking gamma_i(0) to gamma_i(l) via unitary representatives.
        auto unitary_map = [n](const mf::LagrangianFrame& from, const mf::LagrangianFrame& to) {
          const Eigen::MatrixXcd uf = from.matrix().topRows(n).cast<std::complex<double>>() +
                                      std::complex<double>(0, 1) * from.matrix().bottomRows(n).cast<std::complex<double>>();
          const Eigen::MatrixXcd ut = to.matrix().topRows(n).cast<std::complex<double>>() +
                                      std::complex<double>(0, 1) * to.matrix().bottomRows(n).cast<std::complex<double>>();
          const Eigen::MatrixXcd g = ut * uf.adjoint();
          Mat m(2 * n, 2 * n);
          m << g.real(), -g.imag(), g.imag(), g.real();
          return m;
        };
        Mat block = Mat::Zero(4 * n, 4 * n);
        block.topLeftCorner(2 * n, 2 * n) = unitary_map(g1(0.0), g1(l));
        block.bottomRightCorner(2 * n, 2 * n) = unitary_map(g2(0.0), g2(l));
        const Mat p = product_embedding(n);
        return Mat(p * block * p.inverse());
      },
      mf::LagrangianPath::constant(mf::frame_from_basis(product(0.0))), "product");
  return mf::maslov_pair(prod, mf::LagrangianPath::constant(delta));
}

}  // namespace oracle
