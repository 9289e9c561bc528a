#include "maslovflow/specflow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maslovflow/sweep.hpp"

namespace mf {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Up to n = 4 the propagation runs on stack-allocated matrices.
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 8, 8>;

template <typename M>
Mat propagate(const std::vector<Mat>& js, const Mat& j, double nu, int steps) {
  const auto dim = j.rows();
  const double h = 1.0 / steps;
  const M rot = -nu * j;
  M y = M::Identity(dim, dim);
  M a0, am, a1, k1, k2, k3, k4;
  for (int k = 0; k < steps; ++k) {
    a0 = rot + M(js[2 * k]);
    am = rot + M(js[2 * k + 1]);
    a1 = rot + M(js[2 * k + 2]);
    k1.noalias() = a0 * y;
    k2.noalias() = am * (y + 0.5 * h * k1);
    k3.noalias() = am * (y + 0.5 * h * k2);
    k4.noalias() = a1 * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return Mat(y);
}

double arg_increment(Complex from, Complex to) { return std::arg(to * std::conj(from)); }

int downward_count(const RelativeSample& a, const RelativeSample& b) {
  return -net_crossings(a, b, arg_increment(a.det, b.det));
}

struct MuSample {
  double mu;
  RelativeSample rel;
};

void localize_roots(const ShootingProblem& p, const MuSample& a, const MuSample& b, int count, double tol,
                    int depth, std::vector<Eigenvalue>& out) {
  if (count <= 0) return;
  if (b.mu - a.mu <= 2.0 * tol || depth > 200) {
    out.push_back(Eigenvalue{0.5 * (a.mu + b.mu), count});
    return;
  }
  const double mid = 0.5 * (a.mu + b.mu);
  const MuSample m{mid, p.relative(mid)};
  int left = downward_count(a.rel, m.rel);
  left = std::clamp(left, 0, count);
  localize_roots(p, a, m, left, tol, depth + 1, out);
  localize_roots(p, m, b, count - left, tol, depth + 1, out);
}

double default_scan_step(double s_sup) { return kPi / (8.0 * (1.0 + s_sup)); }

// Accepted scan samples over [mu_min, mu_max]: between consecutive samples
// arg det C decreases by less than pi/2.
std::vector<MuSample> scan(const ShootingProblem& p, double mu_min, double mu_max, double step) {
  if (!(mu_min < mu_max)) throw Error("spectrum_window: mu_min must be below mu_max");
  const int pieces = std::max(1, static_cast<int>(std::ceil((mu_max - mu_min) / step)));
  std::vector<MuSample> done;
  done.push_back(MuSample{mu_min, p.relative(mu_min)});
  for (int i = 1; i <= pieces; ++i) {
    const double target = i == pieces ? mu_max : mu_min + (mu_max - mu_min) * i / pieces;
    std::vector<std::pair<double, int>> stack{{target, 0}};
    while (!stack.empty()) {
      auto [mu, depth] = stack.back();
      MuSample b{mu, p.relative(mu)};
      const double inc = arg_increment(done.back().rel.det, b.rel.det);
      if (inc <= 1e-9 && inc > -kPi / 2) {
        done.push_back(std::move(b));
        stack.pop_back();
        continue;
      }
      if (depth >= 40) throw Error("spectrum_window: scan refinement failed (non-monotone eigenphases)");
      stack.back().second = depth + 1;
      stack.emplace_back(0.5 * (done.back().mu + mu), depth + 1);
    }
  }
  return done;
}

void check_window_endpoint(const ShootingProblem& p, double mu, double tol) {
  if (p.detector(mu) <= 10.0 * tol) {
    std::ostringstream msg;
    msg << "spectrum_window: window endpoint " << mu << " is an eigenvalue at lambda = " << p.lambda()
        << "; shift the window";
    throw Error(msg.str());
  }
}

}  // namespace

BoundaryValueFamily::BoundaryValueFamily(LagrangianPath gamma1, LagrangianPath gamma2, SymmetricFamily s,
                                         double shift, int steps)
    : gamma1_(std::move(gamma1)), gamma2_(std::move(gamma2)), s_(std::move(s)), shift_(shift), steps_(steps) {
  if (gamma1_.n() != gamma2_.n()) throw Error("BoundaryValueFamily: paths have different dimensions");
  if (s_.n() == 0) s_ = SymmetricFamily::zero(gamma1_.n());
  if (s_.n() != gamma1_.n()) throw Error("BoundaryValueFamily: S has the wrong dimension");
  if (steps_ < 16) throw Error("BoundaryValueFamily: at least 16 integration steps required");
  s_sup_ = s_.sup_norm();
}

BoundaryValueFamily BoundaryValueFamily::with_shift(double shift) const {
  BoundaryValueFamily f = *this;
  f.shift_ = shift;
  return f;
}

Mat transfer_matrix(const SymmetricFamily& s, double lambda, double mu, int steps) {
  if (steps < 16) throw Error("transfer_matrix: at least 16 steps required");
  const int n = s.n();
  const Mat j = standard_j(n);
  if (s.is_zero()) return std::cos(mu) * Mat::Identity(2 * n, 2 * n) - std::sin(mu) * j;
  auto gen = [&](double t) -> Mat { return Mat(-mu * j + j * s(lambda, t)); };
  return rk4_propagate(gen, 2 * n, 1.0, steps);
}

ShootingProblem::ShootingProblem(const BoundaryValueFamily& fam, double lambda)
    : lambda_(lambda),
      n_(fam.n()),
      steps_(fam.free() ? fam.steps() : effective_steps(fam.steps(), fam.s_sup() + 4.0)),
      shift_(fam.shift()),
      free_(fam.free()),
      f1_(fam.gamma1()(lambda)),
      f2_(fam.gamma2()(lambda)) {
  if (!free_) {
    const Mat j = standard_j(n_);
    js_.reserve(2 * steps_ + 1);
    for (int k = 0; k <= 2 * steps_; ++k) {
      const double t = static_cast<double>(k) / (2.0 * steps_);
      js_.push_back(j * fam.s()(lambda, t));
    }
  }
}

Mat ShootingProblem::transfer(double mu) const {
  const double nu = mu - shift_;
  const Mat j = standard_j(n_);
  if (free_) return std::cos(nu) * Mat::Identity(2 * n_, 2 * n_) - std::sin(nu) * j;
  if (n_ <= 4) return propagate<SmallMat>(js_, j, nu, steps_);
  return propagate<Mat>(js_, j, nu, steps_);
}

LagrangianFrame ShootingProblem::propagated_frame(double mu) const {
  if (free_) return rotate(f1_, -(mu - shift_));
  return apply_symplectic(SymplecticMatrix(transfer(mu)), f1_);
}

RelativeSample ShootingProblem::relative(double mu) const { return relative_sample(propagated_frame(mu), f2_, mu); }

double ShootingProblem::detector(double mu) const {
  Mat both(2 * n_, 2 * n_);
  both << propagated_frame(mu).matrix(), f2_.matrix();
  Eigen::JacobiSVD<Mat> svd(both);
  return svd.singularValues()(2 * n_ - 1);
}

int ShootingProblem::detector_multiplicity(double mu, double rel_tol) const {
  Mat both(2 * n_, 2 * n_);
  both << propagated_frame(mu).matrix(), f2_.matrix();
  Eigen::JacobiSVD<Mat> svd(both);
  const Vec& s = svd.singularValues();
  int count = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < rel_tol * s(0)) ++count;
  return count;
}

double eigen_detector(const BoundaryValueFamily& fam, double lambda, double mu) {
  return ShootingProblem(fam, lambda).detector(mu);
}

int SpectrumWindow::total() const {
  int t = 0;
  for (const auto& e : eigenvalues) t += e.multiplicity;
  return t;
}

int SpectrumWindow::count_in(double lo, double hi) const {
  int t = 0;
  for (const auto& e : eigenvalues)
    if (e.mu >= lo && e.mu <= hi) t += e.multiplicity;
  return t;
}

SpectrumWindow spectrum_window(const ShootingProblem& p, double mu_min, double mu_max, double s_sup,
                               const SpectrumOptions& opts) {
  if (!(mu_min < mu_max)) throw Error("spectrum_window: empty window");
  check_window_endpoint(p, mu_min, opts.tol);
  check_window_endpoint(p, mu_max, opts.tol);
  const double step = opts.scan_step > 0.0 ? opts.scan_step : default_scan_step(s_sup);
  const auto samples = scan(p, mu_min, mu_max, step);
  SpectrumWindow w;
  w.lambda = p.lambda();
  w.mu_min = mu_min;
  w.mu_max = mu_max;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const int c = downward_count(samples[i - 1].rel, samples[i].rel);
    if (c < 0) throw Error("spectrum_window: eigenphases moved upwards; integration too coarse");
    localize_roots(p, samples[i - 1], samples[i], c, opts.tol, 0, w.eigenvalues);
  }
  std::sort(w.eigenvalues.begin(), w.eigenvalues.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return a.mu < b.mu; });
  return w;
}

SpectrumWindow spectrum_window(const BoundaryValueFamily& fam, double lambda, double mu_min, double mu_max,
                               const SpectrumOptions& opts) {
  return spectrum_window(ShootingProblem(fam, lambda), mu_min, mu_max, fam.s_sup(), opts);
}

int eigenvalue_count(const ShootingProblem& p, double mu_min, double mu_max, double s_sup,
                     const SpectrumOptions& opts) {
  if (!(mu_min < mu_max)) throw Error("eigenvalue_count: empty window");
  const double step = opts.scan_step > 0.0 ? opts.scan_step : default_scan_step(s_sup);
  const auto samples = scan(p, mu_min, mu_max, step);
  int total = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) total += downward_count(samples[i - 1].rel, samples[i].rel);
  return total;
}

namespace {

struct IntervalChoice {
  double eps;
  double half_gap;
};

IntervalChoice choose_epsilon(const SpectrumWindow& a, const SpectrumWindow& b, const SpectralFlowOptions& opts) {
  std::vector<double> marks{0.0, opts.eps_cap};
  for (const auto* w : {&a, &b})
    for (const auto& e : w->eigenvalues)
      if (e.mu > opts.zero_tol && e.mu < opts.eps_cap) marks.push_back(e.mu);
  std::sort(marks.begin(), marks.end());
  IntervalChoice best{0.5 * opts.eps_cap, 0.0};
  for (std::size_t i = 1; i < marks.size(); ++i) {
    const double half = 0.5 * (marks[i] - marks[i - 1]);
    if (half > best.half_gap) best = {0.5 * (marks[i] + marks[i - 1]), half};
  }
  return best;
}

// Bound on how far eigenvalues move between la and lb. The boundary data are
// also compared with their values at the midpoint so that a path returning to
// its starting subspace within the interval is not mistaken for a slow one.
double movement_bound(const BoundaryValueFamily& fam, double la, double lb, const LagrangianFrame& a1,
                      const LagrangianFrame& b1, const LagrangianFrame& a2, const LagrangianFrame& b2) {
  const double lm = 0.5 * (la + lb);
  const LagrangianFrame m1 = fam.gamma1()(lm), m2 = fam.gamma2()(lm);
  const double g1 = std::min(1.0, std::max({gap_distance(a1, b1), gap_distance(a1, m1), gap_distance(m1, b1)}));
  const double g2 = std::min(1.0, std::max({gap_distance(a2, b2), gap_distance(a2, m2), gap_distance(m2, b2)}));
  return std::asin(g1) + std::asin(g2) + fam.s().lambda_variation(la, lb);
}

struct GridPoint {
  double lambda;
  SpectrumWindow window;
  LagrangianFrame f1;
  LagrangianFrame f2;
};

std::vector<GridPoint> evaluate_points(const BoundaryValueFamily& fam, const std::vector<double>& lambdas,
                                       double lo, double hi, const SpectralFlowOptions& opts) {
  auto windows = nudged_sweep(fam, lambdas, lo, hi, opts.spectrum, opts.exec);
  std::vector<GridPoint> out;
  out.reserve(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    out.push_back(GridPoint{lambdas[i], std::move(windows[i]), fam.gamma1()(lambdas[i]), fam.gamma2()(lambdas[i])});
  return out;
}

}  // namespace

SpectralFlowResult spectral_flow(const BoundaryValueFamily& fam, const SpectralFlowOptions& opts) {
  const double lo = -0.25;
  const double hi = opts.eps_cap + 0.25;

  std::vector<double> grid;
  for (int i = 0; i <= opts.base_intervals; ++i) grid.push_back(static_cast<double>(i) / opts.base_intervals);
  for (const auto* path : {&fam.gamma1(), &fam.gamma2()})
    for (double k : path->kinks()) grid.push_back(k);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }),
             grid.end());

  std::vector<GridPoint> points = evaluate_points(fam, grid, lo, hi, opts);
  std::vector<IntervalChoice> choices;

  for (int round = 0;; ++round) {
    choices.clear();
    std::vector<double> splits;
    for (std::size_t i = 1; i < points.size(); ++i) {
      const auto& a = points[i - 1];
      const auto& b = points[i];
      const IntervalChoice c = choose_epsilon(a.window, b.window, opts);
      choices.push_back(c);
      const double move = opts.movement_safety * movement_bound(fam, a.lambda, b.lambda, a.f1, b.f1, a.f2, b.f2);
      if (!(move < c.half_gap && move < kPi / 8)) splits.push_back(0.5 * (a.lambda + b.lambda));
    }
    if (splits.empty()) break;
    if (round >= opts.max_depth)
      throw Error("spectral_flow: failed to separate eigenvalue branches at maximal refinement depth");
    auto fresh = evaluate_points(fam, splits, lo, hi, opts);
    for (auto& p : fresh) points.push_back(std::move(p));
    std::sort(points.begin(), points.end(), [](const GridPoint& x, const GridPoint& y) { return x.lambda < y.lambda; });
  }

  SpectralFlowResult r;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double eps = choices[i - 1].eps;
    r.value += points[i].window.count_in(-opts.zero_tol, eps) - points[i - 1].window.count_in(-opts.zero_tol, eps);
    r.epsilons.push_back(eps);
  }
  for (auto& p : points) {
    r.partition.push_back(p.lambda);
    r.branch_data.push_back(std::move(p.window));
  }
  return r;
}

int spectral_flow_shifted(const BoundaryValueFamily& fam, double delta, const SpectralFlowOptions& opts) {
  if (delta == 0.0) return spectral_flow(fam, opts).value;
  if (delta < 0.0) throw Error("spectral_flow_shifted: delta must be nonnegative");
  for (double lambda : {0.0, 1.0}) {
    const SpectrumWindow w = spectrum_window_nudged(fam, lambda, -delta - 0.05, 0.05, opts.spectrum);
    for (const auto& e : w.eigenvalues) {
      if (e.mu >= -delta && e.mu < -opts.zero_tol) {
        std::ostringstream msg;
        msg << "spectral_flow_shifted: delta = " << delta << " too large; eigenvalue " << e.mu
            << " of the operator at lambda = " << lambda << " lies in [-delta, 0)";
        throw Error(msg.str());
      }
    }
  }
  return spectral_flow(fam.with_shift(fam.shift() + delta), opts).value;
}

ConjugationReport conjugation_spectrum_check(const LagrangianPath& g1, const LagrangianPath& g2, double delta0,
                                             const std::vector<double>& lambdas, double mu_min, double mu_max,
                                             const SpectralFlowOptions& opts) {
  if (std::abs(delta0) >= kPi / 4) throw Error("conjugation_spectrum_check: |delta0| must be below pi/4");
  const int n = g1.n();
  ConjugationReport r;
  r.delta0 = delta0;
  r.lambdas = lambdas;
  // Left side integrates J u' + delta0 u numerically; right side is the closed form with rotated data.
  const BoundaryValueFamily shifted(g1, g2, SymmetricFamily::constant(delta0 * Mat::Identity(2 * n, 2 * n)));
  const BoundaryValueFamily rotated(g1, g2.rotated(-delta0));
  r.shifted = spectra_sweep(shifted, lambdas, mu_min, mu_max, opts.spectrum, opts.exec);
  r.rotated = spectra_sweep(rotated, lambdas, mu_min, mu_max, opts.spectrum, opts.exec);
  r.spectra_match = true;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto& a = r.shifted[i].eigenvalues;
    const auto& b = r.rotated[i].eigenvalues;
    if (a.size() != b.size()) {
      r.spectra_match = false;
      r.max_mismatch = std::max(r.max_mismatch, 1.0);
      continue;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
      r.max_mismatch = std::max(r.max_mismatch, std::abs(a[k].mu - b[k].mu));
      if (a[k].multiplicity != b[k].multiplicity) r.spectra_match = false;
    }
  }
  if (r.max_mismatch > 1e-7) r.spectra_match = false;
  r.sfl_shifted = spectral_flow(shifted, opts).value;
  r.sfl_rotated = spectral_flow(rotated, opts).value;
  r.pass = r.spectra_match && r.sfl_shifted == r.sfl_rotated;
  return r;
}

}  // namespace mf
