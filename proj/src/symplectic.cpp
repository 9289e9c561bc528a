#include "maslovflow/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mf {

namespace {

// Replace an almost-Lagrangian orthonormal frame by the nearest exact one:
// the unitary factor of the polar decomposition of X + iY.
Mat snap_to_lagrangian(const Mat& q) {
  const auto n = q.cols();
  CMat u(n, n);
  u.real() = q.topRows(n);
  u.imag() = q.bottomRows(n);
  Eigen::JacobiSVD<CMat> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMat w = svd.matrixU() * svd.matrixV().adjoint();
  Mat f(2 * n, n);
  f.topRows(n) = w.real();
  f.bottomRows(n) = w.imag();
  return f;
}

double isotropy_defect(const Mat& f) {
  const int n = static_cast<int>(f.rows() / 2);
  return (f.transpose() * standard_j(n) * f).norm();
}

double orthonormality_defect(const Mat& f) {
  return (f.transpose() * f - Mat::Identity(f.cols(), f.cols())).norm();
}

}  // namespace

Mat standard_j(int n) {
  if (n < 1) throw Error("standard_j: half-dimension must be positive");
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return j;
}

double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

Mat orthonormalize(const Mat& basis, double rank_tol) {
  const auto m = basis.rows();
  const auto k = basis.cols();
  if (k == 0) return Mat(m, 0);
  if (k > m) throw Error("orthonormalize: more columns than ambient dimension");
  Eigen::ColPivHouseholderQR<Mat> qr(basis);
  const Mat r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const double lead = std::abs(r(0, 0));
  if (lead == 0.0) throw Error("orthonormalize: zero basis");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(r(i, i)) <= rank_tol * lead) {
      std::ostringstream msg;
      msg << "orthonormalize: rank deficient basis (numerical rank " << i << " < " << k << ")";
      throw Error(msg.str());
    }
  }
  Mat q = qr.householderQ() * Mat::Identity(m, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    q.col(j).normalize();
  }
  return q;
}

Subspace Subspace::from_basis(const Mat& basis) { return Subspace(orthonormalize(basis)); }

Subspace Subspace::from_orthonormal(Mat frame) {
  if (orthonormality_defect(frame) > kFrameTol) throw Error("Subspace: frame columns not orthonormal");
  return Subspace(std::move(frame));
}

bool is_lagrangian(const Mat& frame, double tol) {
  if (frame.rows() != 2 * frame.cols() || frame.cols() == 0) return false;
  return orthonormality_defect(frame) <= tol && isotropy_defect(frame) <= tol;
}

LagrangianFrame LagrangianFrame::from_orthonormal(Mat frame) {
  if (frame.cols() == 0 || frame.rows() != 2 * frame.cols())
    throw Error("LagrangianFrame: frame must be 2n x n with n >= 1");
  if (orthonormality_defect(frame) > kFrameTol)
    throw Error("LagrangianFrame: columns not orthonormal (||F^T F - I|| > 1e-10)");
  if (isotropy_defect(frame) > kFrameTol)
    throw Error("LagrangianFrame: span not isotropic (||F^T J F|| > 1e-10)");
  return LagrangianFrame(std::move(frame));
}

LagrangianFrame LagrangianFrame::horizontal(int n) {
  if (n < 1) throw Error("LagrangianFrame: n must be positive");
  Mat f = Mat::Zero(2 * n, n);
  f.topRows(n).setIdentity();
  return LagrangianFrame(std::move(f));
}

LagrangianFrame LagrangianFrame::vertical(int n) {
  if (n < 1) throw Error("LagrangianFrame: n must be positive");
  Mat f = Mat::Zero(2 * n, n);
  f.bottomRows(n).setIdentity();
  return LagrangianFrame(std::move(f));
}

double symplectic_defect(const Mat& a) {
  const int n = static_cast<int>(a.rows() / 2);
  const Mat j = standard_j(n);
  return (a.transpose() * j * a - j).norm();
}

SymplecticMatrix::SymplecticMatrix(Mat a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() % 2 != 0 || a_.rows() == 0)
    throw Error("SymplecticMatrix: matrix must be 2n x 2n");
  const double scale = std::max(1.0, a_.squaredNorm() / static_cast<double>(a_.rows()));
  if (symplectic_defect(a_) > kSymplecticTol * scale)
    throw Error("SymplecticMatrix: A^T J A != J");
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Mat j = standard_j(n());
  return SymplecticMatrix(Mat(-j * a_.transpose() * j));
}

SouriauMatrix::SouriauMatrix(CMat w) : w_(std::move(w)) {
  const auto n = w_.rows();
  if (n == 0 || w_.cols() != n) throw Error("SouriauMatrix: must be square");
  if ((w_.adjoint() * w_ - CMat::Identity(n, n)).norm() > 1e-9) throw Error("SouriauMatrix: not unitary");
  if ((w_ - w_.transpose()).norm() > 1e-9) throw Error("SouriauMatrix: not symmetric");
}

LagrangianFrame frame_from_basis(const Mat& basis) {
  if (basis.rows() != 2 * basis.cols() || basis.cols() == 0)
    throw Error("frame_from_basis: basis must be 2n x n");
  Mat q = orthonormalize(basis);
  if (isotropy_defect(q) > kFrameTol)
    throw Error("frame_from_basis: span is not isotropic (omega_0 does not vanish, ||F^T J F|| > 1e-10)");
  return LagrangianFrame::from_orthonormal(std::move(q));
}

CMat unitary_representative(const LagrangianFrame& l) {
  const int n = l.n();
  CMat u(n, n);
  u.real() = l.matrix().topRows(n);
  u.imag() = l.matrix().bottomRows(n);
  return u;
}

SouriauMatrix souriau(const LagrangianFrame& l) {
  const CMat u = unitary_representative(l);
  return SouriauMatrix(u * u.transpose());
}

int intersection_dimension(const LagrangianFrame& l1, const LagrangianFrame& l2, double tol) {
  if (l1.n() != l2.n()) throw Error("intersection_dimension: mismatched half-dimensions");
  const int n = l1.n();
  Mat both(2 * n, 2 * n);
  both << l1.matrix(), l2.matrix();
  Eigen::JacobiSVD<Mat> svd(both);
  const Vec& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return 2 * n - rank;
}

double gap_distance(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw Error("gap_distance: ambient dimension mismatch");
  return op_norm(u.projector() - v.projector());
}

double gap_distance(const LagrangianFrame& l1, const LagrangianFrame& l2) {
  return gap_distance(l1.subspace(), l2.subspace());
}

double directed_gap(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw Error("directed_gap: ambient dimension mismatch");
  if (u.dim() == 0) throw Error("directed_gap: first subspace is trivial (empty unit sphere)");
  // ||(I - P_V) P_U|| = ||(I - P_V) F_U|| since F_U is an isometry onto U.
  const Mat& fu = u.frame();
  const Mat& fv = v.frame();
  return op_norm(fu - fv * (fv.transpose() * fu));
}

double directed_gap(const LagrangianFrame& l1, const LagrangianFrame& l2) {
  return directed_gap(l1.subspace(), l2.subspace());
}

namespace {

void require_projector(const Mat& p, const char* name, double tol) {
  if (p.rows() != p.cols()) throw Error(std::string("kato check: ") + name + " is not square");
  if ((p - p.transpose()).norm() > tol || (p * p - p).norm() > tol)
    throw Error(std::string("kato check: ") + name + " is not an orthogonal projection");
}

}  // namespace

KatoReport kato_projection_identity_check(const Mat& p, const Mat& q, double tol) {
  require_projector(p, "P", tol);
  require_projector(q, "Q", tol);
  if (p.rows() != q.rows()) throw Error("kato check: dimension mismatch");
  const Mat id = Mat::Identity(p.rows(), p.cols());
  KatoReport r;
  r.norm_complement_p_q = op_norm((id - p) * q);
  r.norm_complement_q_p = op_norm((id - q) * p);
  r.norm_difference = op_norm(p - q);
  r.hypothesis_met = r.norm_complement_p_q < 1.0 - tol && r.norm_complement_q_p < 1.0 - tol;
  r.identity_holds = r.hypothesis_met && std::abs(r.norm_complement_p_q - r.norm_difference) <= tol &&
                     std::abs(r.norm_complement_q_p - r.norm_difference) <= tol;
  return r;
}

Mat rotation_matrix(int n, double theta) {
  return std::cos(theta) * Mat::Identity(2 * n, 2 * n) + std::sin(theta) * standard_j(n);
}

LagrangianFrame rotate(const LagrangianFrame& l, double theta) {
  Mat f = rotation_matrix(l.n(), theta) * l.matrix();
  return LagrangianFrame::from_orthonormal(snap_to_lagrangian(f));
}

LagrangianFrame apply_symplectic(const SymplecticMatrix& a, const LagrangianFrame& l) {
  if (a.n() != l.n()) throw Error("apply_symplectic: dimension mismatch");
  Mat q = orthonormalize(a.matrix() * l.matrix());
  if (isotropy_defect(q) > 1e-6) throw Error("apply_symplectic: image is not isotropic");
  return LagrangianFrame::from_orthonormal(snap_to_lagrangian(q));
}

}  // namespace mf
