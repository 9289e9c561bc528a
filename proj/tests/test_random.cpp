#include <doctest.h>

#include <cmath>

#include "maslovflow/maslov.hpp"
#include "maslovflow/random.hpp"

using namespace mf;

TEST_SUITE("random") {
  TEST_CASE("streams are reproducible and independent") {
    Rng a = instance_rng(5, 3), b = instance_rng(5, 3), c = instance_rng(5, 4);
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
    Rng r = instance_rng(1, 0);
    for (int i = 0; i < 200; ++i) {
      const double u = uniform(r, -2.0, 3.0);
      CHECK(u >= -2.0);
      CHECK(u < 3.0);
      const int k = uniform_int(r, 1, 4);
      CHECK(k >= 1);
      CHECK(k <= 4);
    }
  }

  TEST_CASE("matrix generators have the requested structure") {
    Rng rng = instance_rng(51, 0);
    for (int k = 0; k < 20; ++k) {
      const int n = 1 + k % 4;
      const Mat q = random_orthogonal(n, rng);
      CHECK((q.transpose() * q - Mat::Identity(n, n)).norm() < 1e-12);
      const Mat s = random_symmetric(2 * n, rng, 0.7);
      CHECK((s - s.transpose()).norm() == 0.0);
      CHECK(op_norm(s) <= 0.7 + 1e-12);
      CHECK(symplectic_defect(random_symplectic(n, rng)) < 1e-9);
      CHECK(is_lagrangian(random_frame(n, rng).matrix()));
    }
  }

  TEST_CASE("piecewise generators") {
    Rng rng = instance_rng(52, 0);
    for (int k = 0; k < 20; ++k) {
      const PiecewiseLinear f = random_piecewise(rng, 3, -1.0, 2.0);
      for (const auto& [x, y] : f.points()) {
        CHECK(y >= -1.0);
        CHECK(y <= 2.0);
      }
      const PiecewiseLinear m = random_reparametrization(rng);
      CHECK(m(0.0) == 0.0);
      CHECK(m(1.0) == 1.0);
      for (std::size_t i = 1; i < m.points().size(); ++i) CHECK(m.points()[i].second > m.points()[i - 1].second);
    }
  }

  TEST_CASE("pair generators") {
    Rng rng = instance_rng(53, 0);
    for (int k = 0; k < 30; ++k) {
      const int n = 1 + k % 2;
      const PathPair a = random_admissible_pair(n, rng);
      for (double l : {0.0, 1.0})
        for (int i = 0; i < n; ++i) CHECK(std::abs(relative_phases(a.first(l), a.second(l))(i)) >= 0.05 - 1e-12);
      const PathPair b = random_nonadmissible_pair(n, rng);
      CHECK(intersection_dimension(b.first(0.0), b.second(0.0)) + intersection_dimension(b.first(1.0), b.second(1.0)) > 0);
      const PathPair t = random_transversal_pair(n, rng);
      for (int s = 0; s <= 20; ++s) CHECK(intersection_dimension(t.first(s / 20.0), t.second(s / 20.0)) == 0);
      for (PathKind kind : {PathKind::Rotation, PathKind::UnitaryDiagonal, PathKind::SymplecticExp, PathKind::SymplecticAction})
        CHECK(random_path(n, rng, kind).n() == n);
    }
  }

  TEST_CASE("symmetric families respect the bound") {
    Rng rng = instance_rng(54, 0);
    for (int k = 0; k < 20; ++k) {
      const SymmetricFamily s = random_symmetric_family(1 + k % 2, rng, 2, 3.0);
      CHECK(s.sup_norm(17) <= 3.0 + 1e-12);
      for (const auto& t : s.terms()) {
        CHECK(t.lambda_power <= 2);
        CHECK(t.t_power <= 2);
      }
    }
  }
}
