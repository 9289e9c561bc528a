#include "maslovflow/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mf {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double principal_phase(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double arg_increment(Complex from, Complex to) { return std::arg(to * std::conj(from)); }

int round_checked(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-6) {
    std::ostringstream msg;
    msg << what << ": crossing count " << x << " is not an integer; grid too coarse";
    throw Error(msg.str());
  }
  return static_cast<int>(r);
}

std::vector<double> initial_grid(const std::vector<LagrangianPath>& paths, int base_intervals) {
  std::vector<double> grid;
  for (int i = 0; i <= base_intervals; ++i) grid.push_back(static_cast<double>(i) / base_intervals);
  for (const auto& p : paths)
    for (double k : p.kinks()) grid.push_back(k);
  std::sort(grid.begin(), grid.end());
  std::vector<double> out;
  for (double x : grid)
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  out.back() = 1.0;
  return out;
}

struct PairSample {
  double lambda;
  LagrangianFrame f1;
  LagrangianFrame f2;
  RelativeSample rel;
};

PairSample sample_pair(const LagrangianPath& g1, const LagrangianPath& g2, double lambda) {
  LagrangianFrame f1 = g1(lambda);
  LagrangianFrame f2 = g2(lambda);
  RelativeSample rel = relative_sample(f1, f2, lambda);
  return PairSample{lambda, std::move(f1), std::move(f2), std::move(rel)};
}

bool pair_step_ok(const PairSample& a, const PairSample& b, const MaslovOptions& opts) {
  return gap_distance(a.f1, b.f1) <= opts.max_gap && gap_distance(a.f2, b.f2) <= opts.max_gap &&
         std::abs(arg_increment(a.rel.det, b.rel.det)) < opts.max_phase_step;
}

// Samples along [0, 1] refined until every step is small in both paths and in
// arg det C. A step is accepted only together with its midpoint, so a path
// that leaves and returns within one step (for instance a half turn of a
// rotation, which fixes every subspace) is still resolved.
std::vector<PairSample> refined_pair_samples(const LagrangianPath& g1, const LagrangianPath& g2,
                                             const MaslovOptions& opts) {
  const auto grid = initial_grid({g1, g2}, opts.base_intervals);
  std::vector<PairSample> done;
  done.reserve(grid.size() * 3);
  done.push_back(sample_pair(g1, g2, grid.front()));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    // depth-first refinement of [grid[i-1], grid[i]]
    std::vector<std::pair<PairSample, int>> stack;
    stack.emplace_back(sample_pair(g1, g2, grid[i]), 0);
    while (!stack.empty()) {
      const PairSample& a = done.back();
      auto& [b, depth] = stack.back();
      PairSample m = sample_pair(g1, g2, 0.5 * (a.lambda + b.lambda));
      if (pair_step_ok(a, b, opts) && pair_step_ok(a, m, opts) && pair_step_ok(m, b, opts)) {
        done.push_back(std::move(m));
        done.push_back(std::move(b));
        stack.pop_back();
        continue;
      }
      if (depth >= opts.max_depth)
        throw Error("maslov: grid too coarse after maximal refinement depth near lambda = " +
                    std::to_string(a.lambda));
      const int d = depth + 1;
      depth = d;
      stack.emplace_back(std::move(m), d);
    }
  }
  return done;
}

int interval_count(const RelativeSample& a, const RelativeSample& b) {
  return net_crossings(a, b, arg_increment(a.det, b.det));
}

void localize(const LagrangianPath& g1, const LagrangianPath& g2, const PairSample& a, const PairSample& b, int net,
              double tol, int depth, std::vector<CrossingRecord>& out) {
  if (net == 0) return;
  if (b.lambda - a.lambda <= tol || depth > 80) {
    out.push_back(CrossingRecord{0.5 * (a.lambda + b.lambda), net > 0 ? 1 : -1, std::abs(net)});
    return;
  }
  const PairSample m = sample_pair(g1, g2, 0.5 * (a.lambda + b.lambda));
  const int left = interval_count(a.rel, m.rel);
  const int right = net - left;
  localize(g1, g2, a, m, left, tol, depth + 1, out);
  localize(g1, g2, m, b, right, tol, depth + 1, out);
}

}  // namespace

CMat relative_unitary(const LagrangianFrame& l1, const LagrangianFrame& l2) {
  if (l1.n() != l2.n()) throw Error("relative_unitary: dimension mismatch");
  return souriau(l1).matrix() * souriau(l2).matrix().conjugate();
}

RelativeSample relative_sample(const LagrangianFrame& l1, const LagrangianFrame& l2, double lambda) {
  const CMat c = relative_unitary(l1, l2);
  Eigen::ComplexEigenSolver<CMat> es(c, false);
  RelativeSample s;
  s.lambda = lambda;
  s.det = c.determinant();
  s.det /= std::abs(s.det);
  s.phases.resize(c.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) s.phases(i) = principal_phase(es.eigenvalues()(i));
  return s;
}

Vec relative_phases(const LagrangianFrame& l1, const LagrangianFrame& l2) {
  const CMat c = relative_unitary(l1, l2);
  Eigen::ComplexEigenSolver<CMat> es(c, false);
  Vec out(c.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) out(i) = std::arg(es.eigenvalues()(i));
  std::sort(out.data(), out.data() + out.size());
  return out;
}

int net_crossings(const RelativeSample& a, const RelativeSample& b, double delta) {
  return round_checked((delta + a.phases.sum() - b.phases.sum()) / kTwoPi, "net_crossings");
}

int maslov_loop(const LagrangianPath& loop, const MaslovOptions& opts) {
  if (gap_distance(loop(0.0), loop(1.0)) > 1e-9) throw Error("maslov_loop: path is not closed");
  const auto grid = initial_grid({loop}, opts.base_intervals);
  struct S {
    double lambda;
    LagrangianFrame f;
    Complex d;
  };
  auto sample = [&](double x) {
    LagrangianFrame f = loop(x);
    Complex d = souriau(f).det();
    return S{x, std::move(f), d / std::abs(d)};
  };
  auto step_ok = [&](const S& a, const S& b) {
    return gap_distance(a.f, b.f) <= opts.max_gap && std::abs(arg_increment(a.d, b.d)) < opts.max_phase_step;
  };
  double total = 0.0;
  S prev = sample(0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    std::vector<std::pair<S, int>> stack;
    stack.emplace_back(sample(grid[i]), 0);
    while (!stack.empty()) {
      auto& [b, depth] = stack.back();
      S m = sample(0.5 * (prev.lambda + b.lambda));
      if (step_ok(prev, b) && step_ok(prev, m) && step_ok(m, b)) {
        total += arg_increment(prev.d, m.d) + arg_increment(m.d, b.d);
        prev = std::move(b);
        stack.pop_back();
        continue;
      }
      if (depth >= opts.max_depth) throw Error("maslov_loop: grid too coarse after maximal refinement depth");
      const int d = depth + 1;
      depth = d;
      stack.emplace_back(std::move(m), d);
    }
  }
  return round_checked(total / kTwoPi, "maslov_loop");
}

bool is_admissible(const LagrangianPath& g1, const LagrangianPath& g2, double tol) {
  return intersection_dimension(g1(0.0), g2(0.0), tol) == 0 && intersection_dimension(g1(1.0), g2(1.0), tol) == 0;
}

int maslov_pair_regularized(const LagrangianPath& g1, const LagrangianPath& g2, double theta,
                            const MaslovOptions& opts) {
  if (g1.n() != g2.n()) throw Error("maslov_pair: paths have different dimensions");
  const LagrangianPath g2r = theta == 0.0 ? g2 : g2.rotated(-theta);
  if (!is_admissible(g1, g2r, opts.tol))
    throw Error("maslov_pair: endpoint intersections are not trivial for the chosen regularization");
  const auto samples = refined_pair_samples(g1, g2r, opts);
  int total = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) total += interval_count(samples[i - 1].rel, samples[i].rel);
  return total;
}

double perturbation_theta(const LagrangianPath& g1, const LagrangianPath& g2, const MaslovOptions& opts) {
  if (g1.n() != g2.n()) throw Error("perturbation_theta: paths have different dimensions");
  const LagrangianFrame a0 = g1(0.0), b0 = g2(0.0), a1 = g1(1.0), b1 = g2(1.0);
  double smallest = std::numeric_limits<double>::infinity();
  for (const Vec& ph : {relative_phases(a0, b0), relative_phases(a1, b1)})
    for (Eigen::Index i = 0; i < ph.size(); ++i)
      if (std::abs(ph(i)) > 1e-6) smallest = std::min(smallest, std::abs(ph(i)));
  double theta = std::min(opts.theta_max, smallest / 4.0);
  for (; theta >= opts.theta_min; theta *= 0.5) {
    bool ladder_ok = true;
    for (double t : {theta, theta / 2, theta / 4, theta / 8}) {
      if (intersection_dimension(a0, rotate(b0, -t), opts.tol) != 0 ||
          intersection_dimension(a1, rotate(b1, -t), opts.tol) != 0) {
        ladder_ok = false;
        break;
      }
    }
    if (!ladder_ok) continue;
    try {
      if (maslov_pair_regularized(g1, g2, theta, opts) == maslov_pair_regularized(g1, g2, theta / 2, opts))
        return theta;
    } catch (const Error&) {
      // refinement failure at this theta; try a smaller one
    }
  }
  throw Error("perturbation_theta: no stable regularization angle found down to 1e-6");
}

int maslov_pair(const LagrangianPath& g1, const LagrangianPath& g2, const MaslovOptions& opts) {
  if (g1.n() != g2.n()) throw Error("maslov_pair: paths have different dimensions");
  if (is_admissible(g1, g2, opts.tol)) return maslov_pair_regularized(g1, g2, 0.0, opts);
  return maslov_pair_regularized(g1, g2, perturbation_theta(g1, g2, opts), opts);
}

int maslov_rel(const LagrangianPath& g, const LagrangianFrame& l0, const MaslovOptions& opts) {
  return maslov_pair(g, LagrangianPath::constant(l0), opts);
}

std::vector<CrossingRecord> crossing_list(const LagrangianPath& g1, const LagrangianPath& g2, double tol,
                                          const MaslovOptions& opts) {
  if (g1.n() != g2.n()) throw Error("crossing_list: paths have different dimensions");
  const double theta = is_admissible(g1, g2, opts.tol) ? 0.0 : perturbation_theta(g1, g2, opts);
  const LagrangianPath g2r = theta == 0.0 ? g2 : g2.rotated(-theta);
  const auto samples = refined_pair_samples(g1, g2r, opts);
  std::vector<CrossingRecord> out;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const int net = interval_count(samples[i - 1].rel, samples[i].rel);
    localize(g1, g2r, samples[i - 1], samples[i], net, tol, 0, out);
  }
  return out;
}

std::vector<double> adaptive_grid(const std::vector<LagrangianPath>& paths, const MaslovOptions& opts) {
  const auto base = initial_grid(paths, opts.base_intervals);
  std::vector<double> out{0.0};
  auto frames_at = [&](double x) {
    std::vector<LagrangianFrame> f;
    for (const auto& p : paths) f.push_back(p(x));
    return f;
  };
  auto close = [&](const std::vector<LagrangianFrame>& a, const std::vector<LagrangianFrame>& b) {
    for (std::size_t k = 0; k < paths.size(); ++k)
      if (gap_distance(a[k], b[k]) > opts.max_gap) return false;
    return true;
  };
  auto prev = frames_at(0.0);
  for (std::size_t i = 1; i < base.size(); ++i) {
    std::vector<std::pair<double, int>> stack{{base[i], 0}};
    while (!stack.empty()) {
      auto [x, depth] = stack.back();
      const double xm = 0.5 * (out.back() + x);
      auto cur = frames_at(x);
      auto mid = frames_at(xm);
      if (close(prev, cur) && close(prev, mid) && close(mid, cur)) {
        out.push_back(xm);
        out.push_back(x);
        prev = std::move(cur);
        stack.pop_back();
        continue;
      }
      if (depth >= opts.max_depth) throw Error("adaptive_grid: refinement depth exceeded");
      stack.back().second = depth + 1;
      stack.emplace_back(xm, depth + 1);
    }
  }
  return out;
}

}  // namespace mf
