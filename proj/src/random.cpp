#include "maslovflow/random.hpp"

#include <algorithm>
#include <cmath>

#include "maslovflow/maslov.hpp"

namespace mf {

Rng instance_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6d66u};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

namespace {

Mat gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

}  // namespace

Mat random_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Mat> qr(gaussian(n, n, rng));
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  // Fix column signs so the distribution is Haar.
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Mat random_symmetric(int dim, Rng& rng, double scale) {
  const Mat g = gaussian(dim, dim, rng);
  Mat s = 0.5 * (g + g.transpose());
  const double norm = op_norm(s);
  if (norm > 0.0) s *= scale / norm;
  return s;
}

Mat random_symplectic(int n, Rng& rng, double scale) {
  return symplectic_exponential(random_symmetric(2 * n, rng, scale), 1.0);
}

LagrangianFrame random_frame(int n, Rng& rng) {
  CMat z(n, n);
  std::normal_distribution<double> g;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(z);
  const CMat u = qr.householderQ() * CMat::Identity(n, n);
  Mat f(2 * n, n);
  f << u.real(), u.imag();
  return frame_from_basis(f);
}

PiecewiseLinear random_piecewise(Rng& rng, int pieces, double lo, double hi) {
  std::vector<double> xs{0.0, 1.0};
  for (int i = 1; i < pieces; ++i) xs.push_back(uniform(rng, 0.1, 0.9));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return b - a < 1e-3; }), xs.end());
  if (xs.back() < 1.0) xs.back() = 1.0;
  std::vector<std::pair<double, double>> pts;
  for (double x : xs) pts.emplace_back(x, uniform(rng, lo, hi));
  return PiecewiseLinear(std::move(pts));
}

PiecewiseLinear random_reparametrization(Rng& rng, int pieces) {
  std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
  for (int i = 1; i < pieces; ++i) {
    xs.push_back(uniform(rng, 0.05, 0.95));
    ys.push_back(uniform(rng, 0.05, 0.95));
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && (xs[i] - pts.back().first < 1e-3 || ys[i] - pts.back().second < 1e-3)) continue;
    pts.emplace_back(xs[i], ys[i]);
  }
  pts.back() = {1.0, 1.0};
  return PiecewiseLinear(std::move(pts));
}

LagrangianPath random_path(int n, Rng& rng, PathKind kind) {
  switch (kind) {
    case PathKind::Rotation:
      return LagrangianPath::rotation(random_frame(n, rng), random_piecewise(rng, uniform_int(rng, 1, 3), -4.0, 4.0));
    case PathKind::UnitaryDiagonal: {
      std::vector<PiecewiseLinear> phases;
      for (int j = 0; j < n; ++j) phases.push_back(random_piecewise(rng, uniform_int(rng, 1, 3), -5.0, 5.0));
      return LagrangianPath::unitary_diagonal(std::move(phases));
    }
    case PathKind::SymplecticExp:
      return LagrangianPath::symplectic_exp(random_frame(n, rng), random_symmetric(2 * n, rng, 1.0),
                                            random_piecewise(rng, uniform_int(rng, 1, 2), -2.0, 2.0));
    case PathKind::SymplecticAction: {
      const Mat k1 = random_symmetric(2 * n, rng, 1.0);
      const Mat k2 = random_symmetric(2 * n, rng, 0.8);
      const PiecewiseLinear s1 = random_piecewise(rng, 2, -1.5, 1.5);
      const PiecewiseLinear s2 = random_piecewise(rng, 2, -1.5, 1.5);
      auto a = [k1, k2, s1, s2](double l) -> Mat {
        return symplectic_exponential(k1, s1(l)) * symplectic_exponential(k2, s2(l));
      };
      const LagrangianPath base = LagrangianPath::rotation(random_frame(n, rng), random_piecewise(rng, 1, -2.0, 2.0));
      return LagrangianPath::symplectic_action(a, base, "random_action");
    }
  }
  throw Error("random_path: unknown kind");
}

LagrangianPath random_path(int n, Rng& rng) { return random_path(n, rng, static_cast<PathKind>(uniform_int(rng, 0, 3))); }

namespace {

double endpoint_margin(const LagrangianPath& a, const LagrangianPath& b) {
  double m = kPi;
  for (double l : {0.0, 1.0}) {
    const Vec ph = relative_phases(a(l), b(l));
    for (Eigen::Index i = 0; i < ph.size(); ++i) m = std::min(m, std::abs(ph(i)));
  }
  return m;
}

LagrangianPath rotated_by(const LagrangianPath& p, const PiecewiseLinear& theta) {
  const int n = p.n();
  return LagrangianPath::symplectic_action([n, theta](double l) { return rotation_matrix(n, theta(l)); }, p,
                                           "rotated_by");
}

}  // namespace

PathPair random_admissible_pair(int n, Rng& rng, double margin) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PathPair p{random_path(n, rng), random_path(n, rng)};
    if (endpoint_margin(p.first, p.second) >= margin) return p;
  }
  throw Error("random_admissible_pair: no admissible pair found");
}

PathPair random_nonadmissible_pair(int n, Rng& rng) {
  const int variant = uniform_int(rng, 0, 2);
  if (variant == 0) {
    const LagrangianPath g = random_path(n, rng);
    return {g, g};
  }
  if (variant == 1) {
    // gamma2 = e^{theta J} gamma1 with theta vanishing at one or both ends.
    const LagrangianPath g = random_path(n, rng);
    const int ends = uniform_int(rng, 0, 2);
    const double mid = uniform(rng, 0.2, 0.8);
    const double t0 = ends == 1 ? uniform(rng, 0.4, 2.5) : 0.0;
    const double t1 = ends == 0 ? uniform(rng, 0.4, 2.5) : 0.0;
    const PiecewiseLinear theta({{0.0, t0}, {mid, uniform(rng, -3.0, 3.0)}, {1.0, t1}});
    return {g, rotated_by(g, theta)};
  }
  // Partial endpoint intersection: one shared phase at lambda = 0, conjugated by a fixed symplectic matrix.
  std::vector<PiecewiseLinear> a, b;
  for (int j = 0; j < n; ++j) {
    a.push_back(random_piecewise(rng, 2, -4.0, 4.0));
    PiecewiseLinear bj = random_piecewise(rng, 2, -4.0, 4.0);
    if (j == 0) {
      auto pts = bj.points();
      pts.front().second = a[0](0.0) + kPi * uniform_int(rng, -1, 1);
      bj = PiecewiseLinear(pts);
    }
    b.push_back(std::move(bj));
  }
  const Mat m = random_symplectic(n, rng, 0.7);
  auto act = [m](double) { return m; };
  return {LagrangianPath::symplectic_action(act, LagrangianPath::unitary_diagonal(a), "conjugated"),
          LagrangianPath::symplectic_action(act, LagrangianPath::unitary_diagonal(b), "conjugated")};
}

PathPair random_transversal_pair(int n, Rng& rng) {
  const LagrangianPath g = random_path(n, rng);
  return {g, rotated_by(g, random_piecewise(rng, uniform_int(rng, 1, 3), 0.3, kPi - 0.3))};
}

SymmetricFamily random_symmetric_family(int n, Rng& rng, int degree, double bound) {
  const int count = uniform_int(rng, 1, 3);
  std::vector<SymmetricFamily::Term> terms;
  double budget = uniform(rng, 0.3, 1.0) * bound;
  std::vector<double> weights;
  for (int k = 0; k < count; ++k) weights.push_back(uniform(rng, 0.2, 1.0));
  double total = 0.0;
  for (double w : weights) total += w;
  for (int k = 0; k < count; ++k) {
    SymmetricFamily::Term t;
    t.lambda_power = uniform_int(rng, 0, degree);
    t.t_power = uniform_int(rng, 0, degree);
    // |lambda^p t^q| <= 1 on the unit square, so the norms add up to a sup bound.
    t.coefficient = random_symmetric(2 * n, rng, budget * weights[k] / total);
    terms.push_back(std::move(t));
  }
  return SymmetricFamily(n, std::move(terms));
}

}  // namespace mf
