#include "maslovflow/symmetric_family.hpp"

#include <algorithm>
#include <cmath>

namespace mf {

SymmetricFamily::SymmetricFamily(int n, std::vector<Term> terms) : n_(n) {
  if (n < 1) throw Error("SymmetricFamily: n must be positive");
  for (auto& term : terms) {
    if (term.lambda_power < 0 || term.lambda_power > kMaxDegree || term.t_power < 0 || term.t_power > kMaxDegree)
      throw Error("SymmetricFamily: term degree outside [0, 4]");
    if (term.coefficient.rows() != 2 * n || term.coefficient.cols() != 2 * n)
      throw Error("SymmetricFamily: coefficient must be 2n x 2n");
    // Keep the upper triangle; mirror it so the stored matrix is exactly symmetric.
    Mat c = term.coefficient.triangularView<Eigen::Upper>();
    c.triangularView<Eigen::StrictlyLower>() = c.transpose();
    term.coefficient = std::move(c);
    if (term.coefficient.isZero(0.0)) continue;
    terms_.push_back(std::move(term));
  }
}

SymmetricFamily SymmetricFamily::zero(int n) { return SymmetricFamily(n, {}); }

SymmetricFamily SymmetricFamily::constant(const Mat& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) throw Error("SymmetricFamily: matrix must be 2n x 2n");
  if ((s - s.transpose()).norm() > 1e-12 * std::max(1.0, s.norm()))
    throw Error("SymmetricFamily: matrix is not symmetric");
  return SymmetricFamily(static_cast<int>(s.rows() / 2), {Term{0, 0, s}});
}

Mat SymmetricFamily::operator()(double lambda, double t) const {
  Mat s = Mat::Zero(2 * n_, 2 * n_);
  for (const auto& term : terms_)
    s += std::pow(lambda, term.lambda_power) * std::pow(t, term.t_power) * term.coefficient;
  return s;
}

double SymmetricFamily::sup_norm(int samples) const {
  if (terms_.empty()) return 0.0;
  double best = 0.0;
  for (int i = 0; i < samples; ++i)
    for (int j = 0; j < samples; ++j) {
      const double l = static_cast<double>(i) / (samples - 1);
      const double t = static_cast<double>(j) / (samples - 1);
      best = std::max(best, op_norm((*this)(l, t)));
    }
  return best;
}

double SymmetricFamily::lambda_variation(double a, double b, int samples) const {
  if (terms_.empty()) return 0.0;
  double best = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / (samples - 1);
    best = std::max(best, op_norm((*this)(a, t) - (*this)(b, t)));
  }
  return best;
}

int effective_steps(int requested, double rate) {
  // RK4 on a rotation of frequency w loses about (h w)^6 / 72 of symplecticity per
  // step; keep the accumulated loss w * (h w)^6 / 72 below 1e-10.
  if (rate <= 0.0) return requested;
  const double hw = std::pow(7.2e-9 / std::max(rate, 1.0), 1.0 / 6.0);
  return std::max(requested, static_cast<int>(std::ceil(rate / hw)));
}

}  // namespace mf
