#include <doctest.h>

#include <cmath>

#include "maslovflow/random.hpp"
#include "maslovflow/sweep.hpp"
#include "oracles.hpp"

using namespace mf;

namespace {

LagrangianPath horizontal(int n) { return LagrangianPath::constant(LagrangianFrame::horizontal(n)); }
LagrangianPath vertical(int n) { return LagrangianPath::constant(LagrangianFrame::vertical(n)); }

void check_window(const SpectrumWindow& w, const std::vector<std::pair<double, int>>& expected, double tol = 1e-7) {
  REQUIRE(w.eigenvalues.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(std::abs(w.eigenvalues[k].mu - expected[k].first) <= tol);
    CHECK(w.eigenvalues[k].multiplicity == expected[k].second);
  }
}

bool same_windows(const std::vector<SpectrumWindow>& a, const std::vector<SpectrumWindow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lambda != b[i].lambda || a[i].eigenvalues.size() != b[i].eigenvalues.size()) return false;
    for (std::size_t k = 0; k < a[i].eigenvalues.size(); ++k)
      if (a[i].eigenvalues[k].mu != b[i].eigenvalues[k].mu ||
          a[i].eigenvalues[k].multiplicity != b[i].eigenvalues[k].multiplicity)
        return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("specflow") {
  TEST_CASE("transfer matrix for S = 0 is the closed-form rotation") {
    for (int n = 1; n <= 3; ++n)
      for (double mu : {-2.0, 0.0, 0.7, 3.0}) {
        const Mat expected = std::cos(mu) * Mat::Identity(2 * n, 2 * n) - std::sin(mu) * standard_j(n);
        CHECK((transfer_matrix(SymmetricFamily::zero(n), 0.3, mu) - expected).norm() < 1e-14);
        // The integrator reproduces it for a constant multiple of the identity.
        const SymmetricFamily c = SymmetricFamily::constant(0.4 * Mat::Identity(2 * n, 2 * n));
        const Mat shifted = std::cos(mu - 0.4) * Mat::Identity(2 * n, 2 * n) - std::sin(mu - 0.4) * standard_j(n);
        CHECK((transfer_matrix(c, 0.3, mu) - shifted).norm() < 1e-9);
      }
  }

  TEST_CASE("transfer matrix is symplectic and converges under step halving") {
    Rng rng = instance_rng(31, 0);
    for (int k = 0; k < 10; ++k) {
      const int n = 1 + k % 2;
      const SymmetricFamily s = random_symmetric_family(n, rng, 2, 3.0);
      const double l = uniform(rng, 0, 1), mu = uniform(rng, -3, 3);
      const Mat a = transfer_matrix(s, l, mu, 128), b = transfer_matrix(s, l, mu, 256), c = transfer_matrix(s, l, mu, 512);
      CHECK(symplectic_defect(c) < 1e-8);
      CHECK((b - c).norm() <= (a - b).norm() + 1e-12);
      CHECK((b - c).norm() < 1e-7);
    }
  }

  TEST_CASE("detector vanishes exactly at eigenvalues") {
    const BoundaryValueFamily fam(LagrangianPath::gamma_nor(1), vertical(1));
    CHECK(eigen_detector(fam, 0.5, 0.0) < 1e-12);
    CHECK(eigen_detector(fam, 0.5, 0.5) > 0.1);
    const ShootingProblem p(BoundaryValueFamily(horizontal(2), horizontal(2)), 0.0);
    CHECK(p.detector_multiplicity(0.0) == 2);
    CHECK(p.detector_multiplicity(1.0) == 0);
  }

  TEST_CASE("closed-form spectra, worked values") {
    const double lo = -kPi + 0.1, hi = kPi - 0.1;
    // n = 1: only the moving branch survives; the pi/2 + k pi branch has multiplicity n - 1 = 0.
    check_window(spectrum_window(BoundaryValueFamily(LagrangianPath::gamma_nor(1), vertical(1)), 0.5, lo, hi),
                 {{0.0, 1}});
    check_window(spectrum_window(BoundaryValueFamily(LagrangianPath::gamma_nor(2), vertical(2)), 0.5, lo, hi),
                 {{-kPi / 2, 1}, {0.0, 1}, {kPi / 2, 1}});
    check_window(spectrum_window(BoundaryValueFamily(LagrangianPath::gamma_nor(3), vertical(3)), 0.0, lo, hi),
                 {{-kPi / 2, 3}, {kPi / 2, 3}});
    check_window(spectrum_window(BoundaryValueFamily(horizontal(2), LagrangianPath::gamma_nor_prime(2)), 0.25, lo, hi),
                 {{-3 * kPi / 4, 1}, {-kPi / 2, 1}, {kPi / 4, 1}, {kPi / 2, 1}});
  }

  TEST_CASE("closed-form spectra at random parameters") {
    Rng rng = instance_rng(32, 0);
    for (int k = 0; k < 30; ++k) {
      const int n = 1 + k % 3;
      const bool forward = k % 2 == 0;
      const double l = uniform(rng, 0, 1);
      const double lo = uniform(rng, -6, -3), hi = uniform(rng, 3, 6);
      const BoundaryValueFamily fam = forward ? BoundaryValueFamily(LagrangianPath::gamma_nor(n), vertical(n))
                                              : BoundaryValueFamily(horizontal(n), LagrangianPath::gamma_nor_prime(n));
      check_window(spectrum_window(fam, l, lo, hi), oracle::normalization_spectrum(forward, n, l, lo, hi));
    }
  }

  TEST_CASE("window endpoint on an eigenvalue is an error") {
    const BoundaryValueFamily fam(LagrangianPath::gamma_nor(1), vertical(1));
    CHECK_THROWS_AS(spectrum_window(fam, 0.5, 0.0, 1.0), Error);
    CHECK_THROWS_AS(spectrum_window(fam, 0.5, -1.0, 0.0), Error);
    CHECK_THROWS_AS(spectrum_window(fam, 0.5, 1.0, -1.0), Error);
    // The nudged variant widens the window instead.
    const SpectrumWindow w = spectrum_window_nudged(fam, 0.5, 0.0, 1.0);
    CHECK(w.mu_min < 0.0);
    CHECK(w.count_in(-1e-9, 1e-9) == 1);
  }

  TEST_CASE("counting agrees with localization") {
    Rng rng = instance_rng(33, 0);
    for (int k = 0; k < 10; ++k) {
      const int n = 1 + k % 2;
      const PathPair p = random_admissible_pair(n, rng);
      const BoundaryValueFamily fam(p.first, p.second, random_symmetric_family(n, rng, 2, 3.0));
      const double l = uniform(rng, 0, 1);
      const SpectrumWindow w = spectrum_window_nudged(fam, l, -2.0, 2.0);
      const ShootingProblem sp(fam, l);
      CHECK(eigenvalue_count(sp, w.mu_min, w.mu_max, fam.s_sup()) == w.total());
      for (const auto& e : w.eigenvalues) CHECK(eigen_detector(fam, l, e.mu) < 1e-6);
    }
  }

  TEST_CASE("kernel dimension equals the boundary intersection for S = 0") {
    Rng rng = instance_rng(34, 0);
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= n; ++k) {
        Mat b = Mat::Zero(2 * n, n);
        for (int i = 0; i < n; ++i) {
          const double t = i < k ? 0.0 : uniform(rng, 0.4, kPi - 0.4);
          b(i, i) = std::cos(t);
          b(n + i, i) = std::sin(t);
        }
        const SymplecticMatrix a(random_symplectic(n, rng, 0.5));
        const LagrangianFrame l1 = apply_symplectic(a, LagrangianFrame::horizontal(n));
        const LagrangianFrame l2 = apply_symplectic(a, frame_from_basis(b));
        const BoundaryValueFamily fam(LagrangianPath::constant(l1), LagrangianPath::constant(l2));
        const SpectrumWindow w = spectrum_window_nudged(fam, 0.0, -1.0, 1.0);
        CHECK(w.count_in(-1e-8, 1e-8) == intersection_dimension(l1, l2));
      }
  }

  TEST_CASE("normalization flows") {
    for (int n = 1; n <= 3; ++n) {
      CHECK(spectral_flow(BoundaryValueFamily(LagrangianPath::gamma_nor(n), vertical(n))).value == 1);
      CHECK(spectral_flow(BoundaryValueFamily(horizontal(n), LagrangianPath::gamma_nor_prime(n))).value == -1);
      CHECK(spectral_flow(BoundaryValueFamily(horizontal(n), vertical(n))).value == 0);
    }
  }

  TEST_CASE("flow does not depend on the base partition") {
    Rng rng = instance_rng(35, 0);
    for (int k = 0; k < 6; ++k) {
      const int n = 1 + k % 2;
      const PathPair p = random_admissible_pair(n, rng);
      const BoundaryValueFamily fam(p.first, p.second, random_symmetric_family(n, rng, 1, 2.0));
      SpectralFlowOptions o;
      o.base_intervals = 8;
      const int a = spectral_flow(fam, o).value;
      o.base_intervals = 64;
      o.eps_cap = kPi / 8;
      CHECK(spectral_flow(fam, o).value == a);
      o.exec = Execution::Serial;
      o.base_intervals = 17;
      CHECK(spectral_flow(fam, o).value == a);
    }
  }

  TEST_CASE("partition refines until the movement bound holds") {
    const SpectralFlowResult r = spectral_flow(BoundaryValueFamily(LagrangianPath::gamma_nor(2), vertical(2)));
    REQUIRE(r.partition.size() >= 2);
    CHECK(r.partition.front() == 0.0);
    CHECK(r.partition.back() == 1.0);
    CHECK(r.epsilons.size() + 1 == r.partition.size());
    for (double e : r.epsilons) {
      CHECK(e > 0.0);
      CHECK(e <= kPi / 4);
    }
  }

  TEST_CASE("shifted flow agrees with the unshifted one") {
    for (int n = 1; n <= 2; ++n) {
      const BoundaryValueFamily fam(LagrangianPath::gamma_nor(n), vertical(n));
      for (double d : {0.1, 0.01, 0.001}) CHECK(spectral_flow_shifted(fam, d) == 1);
    }
    // An endpoint eigenvalue at -0.05 lies in [-0.1, 0).
    const BoundaryValueFamily bad(horizontal(1), vertical(1), {}, -kPi / 2 - 0.05);
    CHECK_THROWS_AS(spectral_flow_shifted(bad, 0.1), Error);
    CHECK_NOTHROW(spectral_flow_shifted(bad, 0.01));
  }

  TEST_CASE("shift moves the spectrum rigidly") {
    Rng rng = instance_rng(36, 0);
    const PathPair p = random_admissible_pair(2, rng);
    const BoundaryValueFamily fam(p.first, p.second, random_symmetric_family(2, rng, 2, 3.0));
    for (double l : {0.0, 0.4, 1.0}) {
      const SpectrumWindow a = spectrum_window_nudged(fam, l, -2.0, 2.0);
      const SpectrumWindow b = spectrum_window(fam.with_shift(0.1), l, a.mu_min + 0.1, a.mu_max + 0.1);
      REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
      for (std::size_t k = 0; k < a.eigenvalues.size(); ++k)
        CHECK(std::abs(b.eigenvalues[k].mu - a.eigenvalues[k].mu - 0.1) <= 1e-7);
    }
  }

  TEST_CASE("conjugation by a rotation matches the shifted operator") {
    const std::vector<double> lambdas{0.0, 0.5, 1.0};
    for (double d0 : {0.05, 0.1}) {
      const ConjugationReport r =
          conjugation_spectrum_check(LagrangianPath::gamma_nor(1), vertical(1), d0, lambdas, -3.0, 3.0);
      CHECK(r.spectra_match);
      CHECK(r.max_mismatch <= 1e-7);
      CHECK(r.sfl_shifted == r.sfl_rotated);
      CHECK(r.pass);
    }
    CHECK_THROWS_AS(conjugation_spectrum_check(horizontal(1), vertical(1), 1.0, lambdas, -3.0, 3.0), Error);
  }

  TEST_CASE("serial and parallel sweeps are identical") {
    Rng rng = instance_rng(37, 0);
    const PathPair p = random_admissible_pair(2, rng);
    const BoundaryValueFamily fam(p.first, p.second, random_symmetric_family(2, rng, 2, 3.0));
    std::vector<double> lambdas;
    for (int i = 0; i <= 20; ++i) lambdas.push_back(i / 20.0);
    const auto a = spectra_sweep_serial(fam, lambdas, -2.9, 2.9);
    const auto b = spectra_sweep_parallel(fam, lambdas, -2.9, 2.9);
    CHECK(same_windows(a, b));
    CHECK(same_windows(nudged_sweep(fam, lambdas, -1.0, 1.0, {}, Execution::Serial),
                       nudged_sweep(fam, lambdas, -1.0, 1.0, {}, Execution::Parallel)));
    SpectralFlowOptions o;
    o.exec = Execution::Serial;
    const int s = spectral_flow(fam, o).value;
    o.exec = Execution::Parallel;
    CHECK(spectral_flow(fam, o).value == s);
  }

  TEST_CASE("family validation") {
    CHECK_THROWS_AS(SymmetricFamily(1, {{5, 0, Mat::Identity(2, 2)}}), Error);
    CHECK_THROWS_AS(SymmetricFamily(1, {{0, 0, Mat::Identity(4, 4)}}), Error);
    // Only the upper triangle of a coefficient is read.
    Mat upper = Mat::Zero(2, 2);
    upper(0, 1) = 1.0;
    const Mat m = SymmetricFamily(1, {{0, 0, upper}})(0.2, 0.7);
    CHECK(m(1, 0) == 1.0);
    CHECK_THROWS_AS(BoundaryValueFamily(horizontal(1), vertical(2)), Error);
    const SymmetricFamily s(1, {{1, 2, Mat::Identity(2, 2)}});
    CHECK(s(0.5, 0.5)(0, 0) == doctest::Approx(0.125));
    CHECK(s.sup_norm() == doctest::Approx(1.0));
    CHECK(effective_steps(256, 0.0) == 256);
    CHECK(effective_steps(256, 60.0) > 256);
  }
}
