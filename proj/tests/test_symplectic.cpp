#include <doctest.h>

#include <cmath>

#include "maslovflow/maslov.hpp"
#include "maslovflow/random.hpp"

using namespace mf;

namespace {

// A(R^k x {0} + {0} x R^{n-k} rotated) style pair with intersection dimension exactly k.
std::pair<LagrangianFrame, LagrangianFrame> pair_with_intersection(int n, int k, Rng& rng) {
  Mat b = Mat::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    if (i < k) {
      b(i, i) = 1.0;
    } else {
      const double t = uniform(rng, 0.3, kPi - 0.3);
      b(i, i) = std::cos(t);
      b(n + i, i) = std::sin(t);
    }
  }
  const SymplecticMatrix a(random_symplectic(n, rng, 0.8));
  return {apply_symplectic(a, LagrangianFrame::horizontal(n)), apply_symplectic(a, frame_from_basis(b))};
}

int unit_eigenvalues(const LagrangianFrame& a, const LagrangianFrame& b) {
  const Vec ph = relative_phases(a, b);
  int m = 0;
  for (int i = 0; i < ph.size(); ++i) m += std::abs(ph(i)) < 1e-6 ? 1 : 0;
  return m;
}

}  // namespace

TEST_SUITE("symplectic") {
  TEST_CASE("J squares to minus identity and is antisymmetric") {
    for (int n = 1; n <= 4; ++n) {
      const Mat j = standard_j(n);
      CHECK((j * j + Mat::Identity(2 * n, 2 * n)).norm() == doctest::Approx(0.0));
      CHECK((j + j.transpose()).norm() == doctest::Approx(0.0));
      CHECK(j(0, n) == -1.0);
      CHECK(j(n, 0) == 1.0);
    }
  }

  TEST_CASE("horizontal and vertical frames are Lagrangian and transversal") {
    for (int n = 1; n <= 4; ++n) {
      CHECK(is_lagrangian(LagrangianFrame::horizontal(n).matrix()));
      CHECK(is_lagrangian(LagrangianFrame::vertical(n).matrix()));
      CHECK(intersection_dimension(LagrangianFrame::horizontal(n), LagrangianFrame::vertical(n)) == 0);
      CHECK(intersection_dimension(LagrangianFrame::horizontal(n), LagrangianFrame::horizontal(n)) == n);
      CHECK(gap_distance(LagrangianFrame::horizontal(n), LagrangianFrame::vertical(n)) == doctest::Approx(1.0));
    }
  }

  TEST_CASE("invalid inputs are rejected") {
    Mat not_lagrangian(2 * 2, 2);
    not_lagrangian << 1, 0, 0, 0, 0, 1, 0, 0;  // span(e1, y1)
    CHECK_THROWS_AS(LagrangianFrame::from_orthonormal(not_lagrangian), Error);
    CHECK_THROWS_AS(frame_from_basis(not_lagrangian), Error);
    Mat not_orthonormal = 2.0 * LagrangianFrame::horizontal(2).matrix();
    CHECK_THROWS_AS(LagrangianFrame::from_orthonormal(not_orthonormal), Error);
    CHECK_NOTHROW(frame_from_basis(not_orthonormal));
    CHECK_THROWS_AS(SymplecticMatrix(2.0 * Mat::Identity(4, 4)), Error);
    Mat rank_deficient = Mat::Zero(4, 2);
    rank_deficient(0, 0) = rank_deficient(0, 1) = 1.0;
    CHECK_THROWS_AS(orthonormalize(rank_deficient), Error);
  }

  TEST_CASE("symplectic inverse and action") {
    Rng rng = instance_rng(11, 0);
    for (int k = 0; k < 20; ++k) {
      const int n = 1 + k % 3;
      const SymplecticMatrix a(random_symplectic(n, rng, 1.5));
      CHECK((a.matrix() * a.inverse().matrix() - Mat::Identity(2 * n, 2 * n)).norm() < 1e-9);
      CHECK(symplectic_defect(a.matrix()) < 1e-9);
      const LagrangianFrame l = random_frame(n, rng);
      const LagrangianFrame m = apply_symplectic(a, l);
      CHECK(is_lagrangian(m.matrix()));
      CHECK(gap_distance(apply_symplectic(a.inverse(), m), l) < 1e-9);
    }
  }

  TEST_CASE("Souriau matrix does not depend on the frame") {
    Rng rng = instance_rng(12, 0);
    for (int k = 0; k < 100; ++k) {
      const int n = 1 + k % 4;
      const LagrangianFrame l = random_frame(n, rng);
      const LagrangianFrame l2 = LagrangianFrame::from_orthonormal(l.matrix() * random_orthogonal(n, rng));
      const CMat w1 = souriau(l).matrix(), w2 = souriau(l2).matrix();
      CHECK((w1 - w2).norm() < 1e-10);
      CHECK((w1 - w1.transpose()).norm() < 1e-10);
      CHECK((w1 * w1.adjoint() - CMat::Identity(n, n)).norm() < 1e-10);
    }
  }

  TEST_CASE("unitary representative of the horizontal space is the identity") {
    CHECK((unitary_representative(LagrangianFrame::horizontal(3)) - CMat::Identity(3, 3)).norm() == doctest::Approx(0.0));
    CHECK((souriau(LagrangianFrame::vertical(2)).matrix() + CMat::Identity(2, 2)).norm() < 1e-14);
  }

  TEST_CASE("eigenvalue 1 of the relative unitary has multiplicity dim(L1 cap L2)") {
    Rng rng = instance_rng(13, 0);
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= n; ++k)
        for (int rep = 0; rep < 5; ++rep) {
          const auto [a, b] = pair_with_intersection(n, k, rng);
          CHECK(intersection_dimension(a, b) == k);
          CHECK(unit_eigenvalues(a, b) == k);
        }
  }

  TEST_CASE("gap distance of a rotated subspace is sin(theta)") {
    Rng rng = instance_rng(14, 0);
    for (int k = 0; k < 20; ++k) {
      const int n = 1 + k % 3;
      const double theta = uniform(rng, 0.0, kPi / 2);
      const LagrangianFrame l = random_frame(n, rng);
      CHECK(gap_distance(l, rotate(l, theta)) == doctest::Approx(std::sin(theta)).epsilon(1e-10));
    }
  }

  TEST_CASE("gap distance is the larger directed gap (max formula)") {
    Rng rng = instance_rng(15, 0);
    for (int k = 0; k < 100; ++k) {
      const int amb = uniform_int(rng, 2, 8);
      const int d1 = uniform_int(rng, 1, amb - 1);
      const int d2 = k % 2 == 0 ? d1 : uniform_int(rng, 1, amb - 1);
      const Subspace u = Subspace::from_basis(random_orthogonal(amb, rng).leftCols(d1));
      const Subspace v = Subspace::from_basis(random_orthogonal(amb, rng).leftCols(d2));
      const double g = gap_distance(u, v);
      CHECK(std::abs(g - std::max(directed_gap(u, v), directed_gap(v, u))) <= 1e-12);
      CHECK(g == doctest::Approx(op_norm(u.projector() - v.projector())).epsilon(1e-12));
      CHECK(g <= 1.0 + 1e-12);
      if (d1 != d2) CHECK(g == doctest::Approx(1.0));
    }
  }

  TEST_CASE("Kato identity for nearby projections") {
    Rng rng = instance_rng(16, 0);
    for (int k = 0; k < 100; ++k) {
      const int n = 1 + k % 3;
      const LagrangianFrame l1 = random_frame(n, rng);
      const LagrangianFrame l2 = apply_symplectic(SymplecticMatrix(random_symplectic(n, rng, 0.3)), l1);
      const KatoReport r = kato_projection_identity_check(l1.projector(), l2.projector());
      REQUIRE(r.hypothesis_met);
      CHECK(r.identity_holds);
      CHECK(std::abs(r.norm_complement_p_q - r.norm_difference) <= 1e-10);
      CHECK(std::abs(r.norm_complement_q_p - r.norm_difference) <= 1e-10);
    }
    // Complementary spaces violate the hypothesis.
    const KatoReport far = kato_projection_identity_check(LagrangianFrame::horizontal(1).projector(),
                                                          LagrangianFrame::vertical(1).projector());
    CHECK_FALSE(far.hypothesis_met);
  }

  TEST_CASE("rotations compose additively") {
    Rng rng = instance_rng(17, 0);
    for (int k = 0; k < 30; ++k) {
      const int n = 1 + k % 3;
      const double a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
      const LagrangianFrame l = random_frame(n, rng);
      CHECK(gap_distance(rotate(rotate(l, a), b), rotate(l, a + b)) < 1e-12);
      CHECK((rotation_matrix(n, a) * rotation_matrix(n, b) - rotation_matrix(n, a + b)).norm() < 1e-12);
    }
    // e^{pi J} = -I fixes every subspace.
    CHECK(gap_distance(rotate(LagrangianFrame::horizontal(2), kPi), LagrangianFrame::horizontal(2)) < 1e-14);
  }

  TEST_CASE("op_norm and orthonormalize") {
    Mat d = Mat::Zero(3, 3);
    d.diagonal() << 1.0, -5.0, 2.0;
    CHECK(op_norm(d) == doctest::Approx(5.0));
    const Mat b = Mat::Random(6, 3) + Mat::Identity(6, 3);
    const Mat q = orthonormalize(b);
    CHECK((q.transpose() * q - Mat::Identity(3, 3)).norm() < 1e-14);
    CHECK((q * q.transpose() * b - b).norm() < 1e-12);
  }
}
