// Serial vs OpenMP lambda-sweeps of spectrum windows.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "maslovflow/random.hpp"
#include "maslovflow/sweep.hpp"

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  using namespace mf;
  Rng rng = instance_rng(7, 0);
  const PathPair p = random_admissible_pair(2, rng);
  const BoundaryValueFamily with_s(p.first, p.second, random_symmetric_family(2, rng, 2, 3.0));
  const BoundaryValueFamily free(LagrangianPath::gamma_nor(3),
                                 LagrangianPath::constant(LagrangianFrame::vertical(3)));

  std::vector<double> lambdas;
  for (int i = 0; i <= 200; ++i) lambdas.push_back(i / 200.0);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-24s %12s %12s %8s %s\n", "family", "serial [s]", "parallel [s]", "speedup", "equal");
  for (const auto* fam : {&free, &with_s}) {
    std::vector<SpectrumWindow> a, b;
    const double ts = seconds([&] { a = spectra_sweep_serial(*fam, lambdas, -3.0, 3.0); });
    const double tp = seconds([&] { b = spectra_sweep_parallel(*fam, lambdas, -3.0, 3.0); });
    bool equal = a.size() == b.size();
    for (std::size_t i = 0; equal && i < a.size(); ++i) {
      equal = a[i].eigenvalues.size() == b[i].eigenvalues.size();
      for (std::size_t k = 0; equal && k < a[i].eigenvalues.size(); ++k)
        equal = a[i].eigenvalues[k].mu == b[i].eigenvalues[k].mu &&
                a[i].eigenvalues[k].multiplicity == b[i].eigenvalues[k].multiplicity;
    }
    std::printf("%-24s %12.3f %12.3f %8.2f %s\n", fam == &free ? "gamma_nor/vertical n=3" : "random pair, S deg 2",
                ts, tp, ts / tp, equal ? "yes" : "NO");
  }
}
