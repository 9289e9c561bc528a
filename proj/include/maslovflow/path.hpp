#pragma once

// Analytic descriptions of Lagrangian paths lambda -> L(lambda), lambda in [0, 1].

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "maslovflow/symplectic.hpp"

namespace mf {

// Continuous piecewise-linear function given by breakpoints (x_i, y_i) with
// strictly increasing x_i. Constant extrapolation outside [x_0, x_last].
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> points);
  static PiecewiseLinear constant(double value);
  static PiecewiseLinear linear(double y0, double y1);  // on [0, 1]

  double operator()(double x) const;
  const std::vector<std::pair<double, double>>& points() const { return points_; }
  std::vector<double> knots() const;
  bool empty() const { return points_.empty(); }

 private:
  std::vector<std::pair<double, double>> points_;
};

class LagrangianPath {
 public:
  using MatrixFunction = std::function<Mat(double)>;

  static LagrangianPath constant(LagrangianFrame frame);
  // lambda -> e^{theta(lambda) J} base
  static LagrangianPath rotation(LagrangianFrame base, PiecewiseLinear theta);
  // lambda -> diag(e^{i theta_1(lambda)}, ..., e^{i theta_n(lambda)}) (R^n x {0})
  static LagrangianPath unitary_diagonal(std::vector<PiecewiseLinear> phases);
  // lambda -> exp(s(lambda) J K) base, K symmetric
  static LagrangianPath symplectic_exp(LagrangianFrame base, Mat generator, PiecewiseLinear scale);
  // lambda -> A(lambda) base(lambda) for an arbitrary continuous symplectic family.
  // Not serializable.
  static LagrangianPath symplectic_action(MatrixFunction a, LagrangianPath base, std::string label = "action");
  // Piece k of m is traversed on [k/m, (k+1)/m]; consecutive pieces must meet.
  static LagrangianPath concat(std::vector<LagrangianPath> pieces);
  // lambda -> path(map(lambda)); map takes [0,1] into [0,1].
  static LagrangianPath reparametrize(LagrangianPath path, PiecewiseLinear map);

  static LagrangianPath gamma_nor(int n);
  static LagrangianPath gamma_nor_prime(int n);

  LagrangianPath reversed() const;
  // lambda -> e^{theta J} L(lambda)
  LagrangianPath rotated(double theta) const;

  LagrangianFrame operator()(double lambda) const;
  int n() const;
  bool serializable() const;
  // Parameter values where the descriptor has kinks (breakpoints of its
  // piecewise-linear ingredients), mapped to the outer parameter.
  std::vector<double> kinks() const;

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit LagrangianPath(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct LagrangianPath::Node {
  enum class Kind { Constant, Rotation, UnitaryDiagonal, SymplecticExp, SymplecticAction, Concat, Reparam };
  Kind kind = Kind::Constant;
  int n = 0;
  std::vector<LagrangianFrame> frames;  // Constant / Rotation / SymplecticExp base
  std::vector<PiecewiseLinear> functions;  // theta, phases, scale, map
  Mat generator;                           // SymplecticExp
  MatrixFunction action;                   // SymplecticAction
  std::string label;
  std::vector<LagrangianPath> children;    // Concat pieces, Reparam / Action base
};

// exp(s J K) for symmetric K.
Mat symplectic_exponential(const Mat& generator, double s);

}  // namespace mf
