#pragma once

// Lambda sweeps of spectrum windows. The parallel kernel distributes the
// independent lambda samples over OpenMP threads; the serial kernel is the
// reference it is tested against. Both return windows in input order.

#include <vector>

#include "maslovflow/specflow.hpp"

namespace mf {

std::vector<SpectrumWindow> spectra_sweep_serial(const BoundaryValueFamily& fam, const std::vector<double>& lambdas,
                                                 double mu_min, double mu_max, const SpectrumOptions& opts = {});

std::vector<SpectrumWindow> spectra_sweep_parallel(const BoundaryValueFamily& fam,
                                                   const std::vector<double>& lambdas, double mu_min,
                                                   double mu_max, const SpectrumOptions& opts = {});

std::vector<SpectrumWindow> spectra_sweep(const BoundaryValueFamily& fam, const std::vector<double>& lambdas,
                                          double mu_min, double mu_max, const SpectrumOptions& opts, Execution exec);

// Windows are widened in small deterministic steps when an endpoint hits an
// eigenvalue; the reported window always contains [mu_min, mu_max].
SpectrumWindow spectrum_window_nudged(const BoundaryValueFamily& fam, double lambda, double mu_min, double mu_max,
                                      const SpectrumOptions& opts = {});

std::vector<SpectrumWindow> nudged_sweep(const BoundaryValueFamily& fam, const std::vector<double>& lambdas,
                                         double mu_min, double mu_max, const SpectrumOptions& opts, Execution exec);

}  // namespace mf
