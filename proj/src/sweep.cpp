#include "maslovflow/sweep.hpp"

#include <exception>

namespace mf {

std::vector<SpectrumWindow> spectra_sweep_serial(const BoundaryValueFamily& fam, const std::vector<double>& lambdas,
                                                 double mu_min, double mu_max, const SpectrumOptions& opts) {
  std::vector<SpectrumWindow> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) out.push_back(spectrum_window(fam, l, mu_min, mu_max, opts));
  return out;
}

namespace {

template <typename Body>
std::vector<SpectrumWindow> parallel_map(std::size_t count, const Body& body) {
  std::vector<SpectrumWindow> out(count);
  std::vector<std::exception_ptr> errors(count);
  const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < total; ++i) {
    try {
      out[i] = body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

std::vector<SpectrumWindow> spectra_sweep_parallel(const BoundaryValueFamily& fam,
                                                   const std::vector<double>& lambdas, double mu_min,
                                                   double mu_max, const SpectrumOptions& opts) {
  return parallel_map(lambdas.size(),
                      [&](std::size_t i) { return spectrum_window(fam, lambdas[i], mu_min, mu_max, opts); });
}

std::vector<SpectrumWindow> spectra_sweep(const BoundaryValueFamily& fam, const std::vector<double>& lambdas,
                                          double mu_min, double mu_max, const SpectrumOptions& opts, Execution exec) {
  if (exec == Execution::Serial) return spectra_sweep_serial(fam, lambdas, mu_min, mu_max, opts);
  return spectra_sweep_parallel(fam, lambdas, mu_min, mu_max, opts);
}

SpectrumWindow spectrum_window_nudged(const BoundaryValueFamily& fam, double lambda, double mu_min, double mu_max,
                                      const SpectrumOptions& opts) {
  const ShootingProblem p(fam, lambda);
  const double floor = 100.0 * opts.tol;
  double lo = mu_min;
  double hi = mu_max;
  for (int k = 0; k < 8 && p.detector(lo) <= floor; ++k) lo -= 1e-3 * (k + 1);
  for (int k = 0; k < 8 && p.detector(hi) <= floor; ++k) hi += 1e-3 * (k + 1);
  return spectrum_window(p, lo, hi, fam.s_sup(), opts);
}

std::vector<SpectrumWindow> nudged_sweep(const BoundaryValueFamily& fam, const std::vector<double>& lambdas,
                                         double mu_min, double mu_max, const SpectrumOptions& opts, Execution exec) {
  if (exec == Execution::Serial) {
    std::vector<SpectrumWindow> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) out.push_back(spectrum_window_nudged(fam, l, mu_min, mu_max, opts));
    return out;
  }
  return parallel_map(lambdas.size(),
                      [&](std::size_t i) { return spectrum_window_nudged(fam, lambdas[i], mu_min, mu_max, opts); });
}

}  // namespace mf
