#pragma once

// Spectra and spectral flow of A_lambda u = J u' + S_lambda(t) u (+ shift u)
// on L^2([0,1], R^{2n}) with u(0) in gamma1(lambda), u(1) in gamma2(lambda).
//
// mu is an eigenvalue of A_lambda iff Phi(1) gamma1 meets gamma2, where Phi
// solves Phi' = -J (mu - shift - S_lambda(t)) Phi, Phi(0) = I. Along mu the
// Lagrangian Phi(1) gamma1 moves monotonically, so every eigenphase of the
// relative unitary decreases; eigenvalues in an interval are counted with
// the same winding identity used for the Maslov index and localized by
// bisection on that count.

#include <vector>

#include "maslovflow/maslov.hpp"
#include "maslovflow/symmetric_family.hpp"

namespace mf {

enum class Execution { Serial, Parallel };

class BoundaryValueFamily {
 public:
  BoundaryValueFamily(LagrangianPath gamma1, LagrangianPath gamma2, SymmetricFamily s = {}, double shift = 0.0,
                      int steps = 256);

  const LagrangianPath& gamma1() const { return gamma1_; }
  const LagrangianPath& gamma2() const { return gamma2_; }
  const SymmetricFamily& s() const { return s_; }
  bool free() const { return s_.is_zero(); }
  double shift() const { return shift_; }
  int steps() const { return steps_; }
  int n() const { return gamma1_.n(); }
  double s_sup() const { return s_sup_; }

  BoundaryValueFamily with_shift(double shift) const;

 private:
  LagrangianPath gamma1_;
  LagrangianPath gamma2_;
  SymmetricFamily s_;
  double shift_ = 0.0;
  int steps_ = 256;
  double s_sup_ = 0.0;
};

// Phi(1) for u' = -J (mu I - S(t)) u. For S == 0 the closed form
// exp(-mu J) = cos(mu) I - sin(mu) J is returned.
Mat transfer_matrix(const SymmetricFamily& s, double lambda, double mu, int steps = 256);

// The boundary problem frozen at one lambda; caches frames and S samples.
class ShootingProblem {
 public:
  ShootingProblem(const BoundaryValueFamily& fam, double lambda);

  double lambda() const { return lambda_; }
  Mat transfer(double mu) const;
  LagrangianFrame propagated_frame(double mu) const;
  RelativeSample relative(double mu) const;
  // Smallest singular value of [orth(Phi gamma1) | gamma2].
  double detector(double mu) const;
  // Singular values of the detector matrix below rel_tol * sigma_max.
  int detector_multiplicity(double mu, double rel_tol = 1e-6) const;

  const LagrangianFrame& frame1() const { return f1_; }
  const LagrangianFrame& frame2() const { return f2_; }

 private:
  double lambda_;
  int n_;
  int steps_;
  double shift_;
  bool free_;
  LagrangianFrame f1_;
  LagrangianFrame f2_;
  std::vector<Mat> js_;  // J S(t) at t = k h / 2, k = 0..2 steps
};

double eigen_detector(const BoundaryValueFamily& fam, double lambda, double mu);

struct Eigenvalue {
  double mu = 0.0;
  int multiplicity = 1;
};

struct SpectrumWindow {
  double lambda = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;
  std::vector<Eigenvalue> eigenvalues;

  int total() const;
  // Eigenvalues (with multiplicity) in [lo, hi].
  int count_in(double lo, double hi) const;
};

struct SpectrumOptions {
  double tol = 1e-10;        // bracket half-width for roots
  double scan_step = 0.0;    // 0: pi / (8 (1 + ||S||_inf))
};

SpectrumWindow spectrum_window(const BoundaryValueFamily& fam, double lambda, double mu_min, double mu_max,
                               const SpectrumOptions& opts = {});
SpectrumWindow spectrum_window(const ShootingProblem& problem, double mu_min, double mu_max, double s_sup,
                               const SpectrumOptions& opts = {});

// Number of eigenvalues (with multiplicity) in [mu_min, mu_max); no localization.
int eigenvalue_count(const ShootingProblem& problem, double mu_min, double mu_max, double s_sup,
                     const SpectrumOptions& opts = {});

struct SpectralFlowOptions {
  int base_intervals = 32;
  double eps_cap = kPi / 4;
  int max_depth = 40;
  double zero_tol = 1e-8;
  double movement_safety = 2.0;
  SpectrumOptions spectrum{};
  Execution exec = Execution::Parallel;
};

struct SpectralFlowResult {
  int value = 0;
  std::vector<double> partition;
  std::vector<double> epsilons;
  std::vector<SpectrumWindow> branch_data;
};

SpectralFlowResult spectral_flow(const BoundaryValueFamily& fam, const SpectralFlowOptions& opts = {});

// Spectral flow of A + delta I. Throws if some endpoint operator has an eigenvalue in [-delta, 0).
int spectral_flow_shifted(const BoundaryValueFamily& fam, double delta, const SpectralFlowOptions& opts = {});

struct ConjugationReport {
  double delta0 = 0.0;
  std::vector<double> lambdas;
  std::vector<SpectrumWindow> shifted;  // A + delta0 with (gamma1, gamma2)
  std::vector<SpectrumWindow> rotated;  // A with (gamma1, e^{-delta0 J} gamma2)
  double max_mismatch = 0.0;
  bool spectra_match = false;
  int sfl_shifted = 0;
  int sfl_rotated = 0;
  bool pass = false;
};

ConjugationReport conjugation_spectrum_check(const LagrangianPath& g1, const LagrangianPath& g2, double delta0,
                                             const std::vector<double>& lambdas, double mu_min, double mu_max,
                                             const SpectralFlowOptions& opts = {});

}  // namespace mf
