#pragma once

#include <vector>

#include "maslovflow/symplectic.hpp"

namespace mf {

// Polynomial two-parameter family S_lambda(t) = sum_k lambda^{p_k} t^{q_k} C_k
// of symmetric 2n x 2n matrices, degrees at most 4 in each variable.
class SymmetricFamily {
 public:
  struct Term {
    int lambda_power = 0;
    int t_power = 0;
    Mat coefficient;
  };

  static constexpr int kMaxDegree = 4;

  SymmetricFamily() = default;
  SymmetricFamily(int n, std::vector<Term> terms);
  static SymmetricFamily zero(int n);
  static SymmetricFamily constant(const Mat& s);

  int n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Mat operator()(double lambda, double t) const;
  // max over a sample lattice of (lambda, t) of the spectral norm
  double sup_norm(int samples = 9) const;
  // max over t samples of ||S_a(t) - S_b(t)||
  double lambda_variation(double a, double b, int samples = 9) const;

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

// Step count actually used for an integration over [0, 1] whose coefficient
// has norm at most `rate`: the requested count, raised until the symplecticity
// loss of RK4 stays near 1e-10.
int effective_steps(int requested, double rate);

// Classical RK4 for Y' = A(t) Y on [0, t_end] with `steps` uniform steps.
// `generator(t)` returns A(t).
template <typename Generator>
Mat rk4_propagate(const Generator& generator, int dim, double t_end, int steps) {
  Mat y = Mat::Identity(dim, dim);
  if (steps <= 0 || t_end == 0.0) return y;
  const double h = t_end / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Mat a0 = generator(t);
    const Mat am = generator(t + 0.5 * h);
    const Mat a1 = generator(t + h);
    const Mat k1 = a0 * y;
    const Mat k2 = am * (y + 0.5 * h * k1);
    const Mat k3 = am * (y + 0.5 * h * k2);
    const Mat k4 = a1 * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

}  // namespace mf
