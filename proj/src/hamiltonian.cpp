#include "maslovflow/hamiltonian.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace mf {

namespace {

// One RK4 step of Psi' = J S_lambda(t) Psi from (t, y) with step h.
Mat rk4_step(const SymmetricFamily& s, const Mat& j, double lambda, double t, double h, const Mat& y) {
  const Mat a0 = j * s(lambda, t);
  const Mat am = j * s(lambda, t + 0.5 * h);
  const Mat a1 = j * s(lambda, t + h);
  const Mat k1 = a0 * y;
  const Mat k2 = am * (y + 0.5 * h * k1);
  const Mat k3 = am * (y + 0.5 * h * k2);
  const Mat k4 = a1 * (y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

FundamentalSolution::FundamentalSolution(SymmetricFamily s, double lambda, int steps)
    : s_(std::move(s)), lambda_(lambda), steps_(effective_steps(steps, s_.sup_norm())) {
  if (steps < 64) throw Error("fundamental_solution: at least 64 steps required");
  if (s_.n() == 0) throw Error("fundamental_solution: empty symmetric family");
  const int dim = 2 * s_.n();
  const Mat j = standard_j(s_.n());
  const double h = 1.0 / steps_;
  values_.reserve(steps_ + 1);
  values_.push_back(Mat::Identity(dim, dim));
  for (int k = 0; k < steps_; ++k) {
    values_.push_back(s_.is_zero() ? values_.back() : rk4_step(s_, j, lambda_, k * h, h, values_.back()));
    max_defect_ = std::max(max_defect_, symplectic_defect(values_.back()));
  }
  if (max_defect_ > 1e-6) {
    std::ostringstream msg;
    msg << "fundamental_solution: symplecticity drift " << max_defect_ << " at lambda = " << lambda_
        << "; increase the step count";
    throw Error(msg.str());
  }
}

Mat FundamentalSolution::at(double t) const {
  if (t < 0.0 || t > 1.0) throw Error("FundamentalSolution::at: t outside [0, 1]");
  const double h = 1.0 / steps_;
  const int k = std::min(steps_, static_cast<int>(std::floor(t / h)));
  const double rest = t - k * h;
  if (rest <= 0.0 || k == steps_ || s_.is_zero()) return values_[k];
  return rk4_step(s_, standard_j(s_.n()), lambda_, k * h, rest, values_[k]);
}

FundamentalSolution fundamental_solution(const SymmetricFamily& s, double lambda, int steps) {
  return FundamentalSolution(s, lambda, steps);
}

LagrangianPath psi_end_path(const SymmetricFamily& s, const LagrangianPath& gamma, int steps) {
  if (s.is_zero()) return gamma;
  const int dim = 2 * s.n();
  const int used = effective_steps(steps, s.sup_norm());
  auto a = [s, used, dim](double lambda) -> Mat {
    const Mat j = standard_j(s.n());
    return rk4_propagate([&](double t) -> Mat { return j * s(lambda, t); }, dim, 1.0, used);
  };
  return LagrangianPath::symplectic_action(a, gamma, "psi_end");
}

LagrangianPath psi_time_path(const FundamentalSolution& psi, const LagrangianFrame& l) {
  auto shared = std::make_shared<FundamentalSolution>(psi);
  return LagrangianPath::symplectic_action([shared](double t) { return shared->at(t); },
                                           LagrangianPath::constant(l), "psi_time");
}

namespace {

int flow_of(const SymmetricFamily& s, const LagrangianPath& g1, const LagrangianPath& g2,
            const HamiltonianOptions& opts) {
  const BoundaryValueFamily fam(g1, g2, s, 0.0, opts.steps);
  return spectral_flow(fam, opts.flow).value;
}

SymmetricFamily normalized(const SymmetricFamily& s, int n) {
  if (s.n() == 0) return SymmetricFamily::zero(n);
  if (s.n() != n) throw Error("S and the boundary paths have different dimensions");
  return s;
}

}  // namespace

IdentityCheck clm_hamiltonian(const SymmetricFamily& s_in, const LagrangianPath& g1, const LagrangianPath& g2,
                              const HamiltonianOptions& opts) {
  const SymmetricFamily s = normalized(s_in, g1.n());
  IdentityCheck r;
  r.name = "clm-hamiltonian";
  r.lhs = flow_of(s, g1, g2, opts);
  r.rhs = maslov_pair(psi_end_path(s, g1, opts.steps), g2, opts.maslov);
  r.terms = {{"sfl", r.lhs}, {"maslov(psi gamma1, gamma2)", r.rhs}};
  return r;
}

IdentityCheck three_term_identity(const SymmetricFamily& s_in, const LagrangianPath& g1, const LagrangianPath& g2,
                                  const HamiltonianOptions& opts) {
  const SymmetricFamily s = normalized(s_in, g1.n());
  IdentityCheck r;
  r.name = "three-term";
  r.lhs = flow_of(s, g1, g2, opts);
  const FundamentalSolution psi0(s, 0.0, opts.steps);
  const FundamentalSolution psi1(s, 1.0, opts.steps);
  const int end1 = maslov_pair(psi_time_path(psi1, g1(1.0)), LagrangianPath::constant(g2(1.0)), opts.maslov);
  const int middle = maslov_pair(g1, g2, opts.maslov);
  const int end0 = maslov_pair(psi_time_path(psi0, g1(0.0)), LagrangianPath::constant(g2(0.0)), opts.maslov);
  r.rhs = end1 + middle - end0;
  r.terms = {{"sfl", r.lhs},
             {"maslov(psi_1(.) gamma1(1), gamma2(1))", end1},
             {"maslov(gamma1, gamma2)", middle},
             {"maslov(psi_0(.) gamma1(0), gamma2(0))", end0}};
  return r;
}

void validate_alpha_beta(const PiecewiseLinear& alpha, const PiecewiseLinear& beta) {
  if (alpha.empty() || beta.empty()) throw Error("alpha/beta: empty breakpoint list");
  std::vector<double> xs = alpha.knots();
  for (double x : beta.knots()) xs.push_back(x);
  for (double x : xs) {
    if (x < 0.0 || x > 1.0) {
      std::ostringstream msg;
      msg << "alpha/beta: breakpoint " << x << " outside [0, 1]";
      throw Error(msg.str());
    }
    const double a = alpha(x);
    const double b = beta(x);
    if (std::abs(b - a - x) > 1e-12) {
      std::ostringstream msg;
      msg << "alpha/beta: beta(" << x << ") = " << b << " differs from alpha(" << x << ") + " << x << " = " << a + x;
      throw Error(msg.str());
    }
    if (a < -1e-12 || a > 1.0 + 1e-12 || b < -1e-12 || b > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << "alpha/beta: value at breakpoint " << x << " leaves [0, 1]";
      throw Error(msg.str());
    }
  }
  // The range constraint forces these endpoint values.
  if (std::abs(alpha(1.0)) > 1e-12 || std::abs(beta(1.0) - 1.0) > 1e-12 || !(alpha.knots().front() <= 0.0) ||
      !(alpha.knots().back() >= 1.0) || !(beta.knots().front() <= 0.0) || !(beta.knots().back() >= 1.0))
    throw Error("alpha/beta: breakpoints must cover [0, 1] with alpha(1) = 0 and beta(1) = 1");
}

IdentityCheck alpha_beta_identity(const SymmetricFamily& s_in, const LagrangianPath& g1, const LagrangianPath& g2,
                                  const PiecewiseLinear& alpha, const PiecewiseLinear& beta,
                                  const HamiltonianOptions& opts) {
  validate_alpha_beta(alpha, beta);
  const SymmetricFamily s = normalized(s_in, g1.n());
  IdentityCheck r;
  r.name = "alpha-beta";
  r.lhs = flow_of(s, g1, g2, opts);

  auto end_term = [&](double i) {
    auto psi = std::make_shared<FundamentalSolution>(s, i, opts.steps);
    const Mat inv_end = SymplecticMatrix(psi->end()).inverse().matrix();
    const LagrangianPath first = LagrangianPath::reparametrize(psi_time_path(*psi, g1(i)), alpha);
    const LagrangianPath second = LagrangianPath::reparametrize(
        LagrangianPath::symplectic_action([psi, inv_end](double t) -> Mat { return psi->at(t) * inv_end; },
                                          LagrangianPath::constant(g2(i)), "psi_time_inv_end"),
        beta);
    return maslov_pair(first, second, opts.maslov);
  };
  const int term0 = end_term(0.0);
  const int middle = maslov_pair(g1, g2, opts.maslov);
  const int term1 = end_term(1.0);
  r.rhs = term0 + middle - term1;
  r.terms = {{"sfl", r.lhs},
             {"maslov(psi_0(alpha) gamma1(0), psi_0(beta) psi_0(1)^-1 gamma2(0))", term0},
             {"maslov(gamma1, gamma2)", middle},
             {"maslov(psi_1(alpha) gamma1(1), psi_1(beta) psi_1(1)^-1 gamma2(1))", term1}};
  r.notes.push_back("alpha(1) = 0 and beta(1) = 1 checked");
  return r;
}

IdentityCheck morse_index_formula(const SymmetricFamily& s, const HamiltonianOptions& opts) {
  if (s.n() == 0) throw Error("morse_index_formula: S must fix the dimension");
  const LagrangianPath dirichlet = LagrangianPath::constant(LagrangianFrame::vertical(s.n()));
  IdentityCheck r;
  r.name = "morse";
  r.lhs = flow_of(s, dirichlet, dirichlet, opts);
  r.rhs = maslov_pair(psi_end_path(s, dirichlet, opts.steps), dirichlet, opts.maslov);
  r.terms = {{"sfl", r.lhs}, {"maslov(psi vertical, vertical)", r.rhs}};
  return r;
}

}  // namespace mf
