#pragma once

// Finite-dimensional symplectic linear algebra on R^{2n} with the standard
// structure J = [[0, -I], [I, 0]]. Subspaces are stored as orthonormal
// frames; projectors are derived on demand.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mf {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFrameTol = 1e-10;
inline constexpr double kSymplecticTol = 1e-8;
inline constexpr double kDefaultRankTol = 1e-8;

Mat standard_j(int n);

// Largest singular value.
double op_norm(const Mat& a);

// Orthonormal basis of span(basis) by column-pivoted Householder QR followed
// by one Gram-Schmidt re-orthogonalization pass. Throws on rank deficiency.
Mat orthonormalize(const Mat& basis, double rank_tol = 1e-10);

// A closed subspace of R^m of arbitrary dimension.
class Subspace {
 public:
  static Subspace from_basis(const Mat& basis);
  static Subspace from_orthonormal(Mat frame);

  const Mat& frame() const { return frame_; }
  int ambient() const { return static_cast<int>(frame_.rows()); }
  int dim() const { return static_cast<int>(frame_.cols()); }
  Mat projector() const { return frame_ * frame_.transpose(); }

 private:
  explicit Subspace(Mat f) : frame_(std::move(f)) {}
  Mat frame_;
};

class LagrangianFrame {
 public:
  // Validates ||F^T F - I|| <= 1e-10 and ||F^T J F|| <= 1e-10.
  static LagrangianFrame from_orthonormal(Mat frame);
  static LagrangianFrame horizontal(int n);  // R^n x {0}
  static LagrangianFrame vertical(int n);    // {0} x R^n

  int n() const { return static_cast<int>(frame_.cols()); }
  const Mat& matrix() const { return frame_; }
  Mat projector() const { return frame_ * frame_.transpose(); }
  Subspace subspace() const { return Subspace::from_orthonormal(frame_); }

 private:
  explicit LagrangianFrame(Mat f) : frame_(std::move(f)) {}
  Mat frame_;
};

bool is_lagrangian(const Mat& frame, double tol = kFrameTol);

class SymplecticMatrix {
 public:
  // Accepts A when ||A^T J A - J|| <= 1e-8 * max(1, ||A||^2).
  explicit SymplecticMatrix(Mat a);
  int n() const { return static_cast<int>(a_.rows() / 2); }
  const Mat& matrix() const { return a_; }
  SymplecticMatrix inverse() const;  // -J A^T J

 private:
  Mat a_;
};

double symplectic_defect(const Mat& a);

class SouriauMatrix {
 public:
  explicit SouriauMatrix(CMat w);
  int n() const { return static_cast<int>(w_.rows()); }
  const CMat& matrix() const { return w_; }
  Complex det() const { return w_.determinant(); }

 private:
  CMat w_;
};

LagrangianFrame frame_from_basis(const Mat& basis);

// U = X + iY for the frame F = [X; Y].
CMat unitary_representative(const LagrangianFrame& l);

// W = U U^T; independent of the frame chosen for L.
SouriauMatrix souriau(const LagrangianFrame& l);

int intersection_dimension(const LagrangianFrame& l1, const LagrangianFrame& l2,
                           double tol = kDefaultRankTol);

double gap_distance(const Subspace& u, const Subspace& v);
double gap_distance(const LagrangianFrame& l1, const LagrangianFrame& l2);
double directed_gap(const Subspace& u, const Subspace& v);
double directed_gap(const LagrangianFrame& l1, const LagrangianFrame& l2);

struct KatoReport {
  bool hypothesis_met = false;
  double norm_complement_p_q = 0.0;  // ||(I - P) Q||
  double norm_complement_q_p = 0.0;  // ||(I - Q) P||
  double norm_difference = 0.0;      // ||P - Q||
  bool identity_holds = false;
};

KatoReport kato_projection_identity_check(const Mat& p, const Mat& q, double tol = 1e-10);

// e^{theta J} = cos(theta) I + sin(theta) J applied to L.
Mat rotation_matrix(int n, double theta);
LagrangianFrame rotate(const LagrangianFrame& l, double theta);

LagrangianFrame apply_symplectic(const SymplecticMatrix& a, const LagrangianFrame& l);

}  // namespace mf
