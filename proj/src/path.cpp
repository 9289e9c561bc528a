#include "maslovflow/path.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace mf {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error("PiecewiseLinear: no breakpoints");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i].first > points_[i - 1].first))
      throw Error("PiecewiseLinear: breakpoints must be strictly increasing");
}

PiecewiseLinear PiecewiseLinear::constant(double value) { return PiecewiseLinear({{0.0, value}, {1.0, value}}); }

PiecewiseLinear PiecewiseLinear::linear(double y0, double y1) { return PiecewiseLinear({{0.0, y0}, {1.0, y1}}); }

double PiecewiseLinear::operator()(double x) const {
  if (points_.empty()) return 0.0;
  if (x <= points_.front().first) return points_.front().second;
  if (x >= points_.back().first) return points_.back().second;
  auto hi = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const auto& p) { return v < p.first; });
  auto lo = hi - 1;
  const double w = (x - lo->first) / (hi->first - lo->first);
  return (1.0 - w) * lo->second + w * hi->second;
}

std::vector<double> PiecewiseLinear::knots() const {
  std::vector<double> k;
  k.reserve(points_.size());
  for (const auto& p : points_) k.push_back(p.first);
  return k;
}

Mat symplectic_exponential(const Mat& generator, double s) {
  const int n = static_cast<int>(generator.rows() / 2);
  const Mat x = s * standard_j(n) * generator;
  return x.exp();
}

namespace {

using Node = LagrangianPath::Node;
using Kind = Node::Kind;

LagrangianFrame frame_of_phases(const std::vector<PiecewiseLinear>& phases, double lambda) {
  const int n = static_cast<int>(phases.size());
  Mat f = Mat::Zero(2 * n, n);
  for (int j = 0; j < n; ++j) {
    const double th = phases[j](lambda);
    f(j, j) = std::cos(th);
    f(n + j, j) = std::sin(th);
  }
  return LagrangianFrame::from_orthonormal(std::move(f));
}

}  // namespace

LagrangianPath LagrangianPath::constant(LagrangianFrame frame) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->n = frame.n();
  node->frames.push_back(std::move(frame));
  return LagrangianPath(std::move(node));
}

LagrangianPath LagrangianPath::rotation(LagrangianFrame base, PiecewiseLinear theta) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Rotation;
  node->n = base.n();
  node->frames.push_back(std::move(base));
  node->functions.push_back(std::move(theta));
  return LagrangianPath(std::move(node));
}

LagrangianPath LagrangianPath::unitary_diagonal(std::vector<PiecewiseLinear> phases) {
  if (phases.empty()) throw Error("unitary_diagonal: need at least one phase function");
  auto node = std::make_shared<Node>();
  node->kind = Kind::UnitaryDiagonal;
  node->n = static_cast<int>(phases.size());
  node->functions = std::move(phases);
  return LagrangianPath(std::move(node));
}

LagrangianPath LagrangianPath::symplectic_exp(LagrangianFrame base, Mat generator, PiecewiseLinear scale) {
  const int n = base.n();
  if (generator.rows() != 2 * n || generator.cols() != 2 * n)
    throw Error("symplectic_exp: generator must be 2n x 2n");
  if ((generator - generator.transpose()).norm() > 1e-12 * std::max(1.0, generator.norm()))
    throw Error("symplectic_exp: generator must be symmetric");
  auto node = std::make_shared<Node>();
  node->kind = Kind::SymplecticExp;
  node->n = n;
  node->frames.push_back(std::move(base));
  node->generator = 0.5 * (generator + generator.transpose());
  node->functions.push_back(std::move(scale));
  return LagrangianPath(std::move(node));
}

LagrangianPath LagrangianPath::symplectic_action(MatrixFunction a, LagrangianPath base, std::string label) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::SymplecticAction;
  node->n = base.n();
  node->action = std::move(a);
  node->label = std::move(label);
  node->children.push_back(std::move(base));
  return LagrangianPath(std::move(node));
}

LagrangianPath LagrangianPath::concat(std::vector<LagrangianPath> pieces) {
  if (pieces.empty()) throw Error("concat: no pieces");
  const int n = pieces.front().n();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].n() != n) throw Error("concat: pieces have different dimensions");
    if (i > 0 && gap_distance(pieces[i - 1](1.0), pieces[i](0.0)) > 1e-9)
      throw Error("concat: piece " + std::to_string(i) + " does not start where the previous one ends");
  }
  if (pieces.size() == 1) return pieces.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Concat;
  node->n = n;
  node->children = std::move(pieces);
  return LagrangianPath(std::move(node));
}

LagrangianPath LagrangianPath::reparametrize(LagrangianPath path, PiecewiseLinear map) {
  for (const auto& [x, y] : map.points())
    if (y < -1e-12 || y > 1.0 + 1e-12) throw Error("reparametrize: map must take values in [0, 1]");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Reparam;
  node->n = path.n();
  node->children.push_back(std::move(path));
  node->functions.push_back(std::move(map));
  return LagrangianPath(std::move(node));
}

LagrangianPath LagrangianPath::gamma_nor(int n) {
  if (n < 1) throw Error("gamma_nor: n must be positive");
  std::vector<PiecewiseLinear> phases(n, PiecewiseLinear::constant(0.0));
  phases[0] = PiecewiseLinear::linear(0.0, kPi);
  return unitary_diagonal(std::move(phases));
}

LagrangianPath LagrangianPath::gamma_nor_prime(int n) {
  if (n < 1) throw Error("gamma_nor_prime: n must be positive");
  // diag(-i e^{i pi lambda}, i, ..., i)
  std::vector<PiecewiseLinear> phases(n, PiecewiseLinear::constant(kPi / 2));
  phases[0] = PiecewiseLinear::linear(-kPi / 2, kPi / 2);
  return unitary_diagonal(std::move(phases));
}

LagrangianPath LagrangianPath::reversed() const { return reparametrize(*this, PiecewiseLinear::linear(1.0, 0.0)); }

LagrangianPath LagrangianPath::rotated(double theta) const {
  const int dim = n();
  const Mat r = rotation_matrix(dim, theta);
  return symplectic_action([r](double) { return r; }, *this, "rotation");
}

int LagrangianPath::n() const { return node_->n; }

LagrangianFrame LagrangianPath::operator()(double lambda) const {
  const Node& nd = *node_;
  switch (nd.kind) {
    case Kind::Constant:
      return nd.frames.front();
    case Kind::Rotation:
      return rotate(nd.frames.front(), nd.functions.front()(lambda));
    case Kind::UnitaryDiagonal:
      return frame_of_phases(nd.functions, lambda);
    case Kind::SymplecticExp: {
      const Mat a = symplectic_exponential(nd.generator, nd.functions.front()(lambda));
      return apply_symplectic(SymplecticMatrix(a), nd.frames.front());
    }
    case Kind::SymplecticAction:
      return apply_symplectic(SymplecticMatrix(nd.action(lambda)), nd.children.front()(lambda));
    case Kind::Concat: {
      const auto m = static_cast<double>(nd.children.size());
      const double s = std::clamp(lambda, 0.0, 1.0) * m;
      auto k = static_cast<std::size_t>(std::floor(s));
      if (k >= nd.children.size()) k = nd.children.size() - 1;
      return nd.children[k](s - static_cast<double>(k));
    }
    case Kind::Reparam:
      return nd.children.front()(std::clamp(nd.functions.front()(lambda), 0.0, 1.0));
  }
  throw Error("LagrangianPath: unknown descriptor");
}

bool LagrangianPath::serializable() const {
  const Node& nd = *node_;
  if (nd.kind == Kind::SymplecticAction) return false;
  return std::all_of(nd.children.begin(), nd.children.end(), [](const auto& c) { return c.serializable(); });
}

std::vector<double> LagrangianPath::kinks() const {
  const Node& nd = *node_;
  std::vector<double> out;
  switch (nd.kind) {
    case Kind::Constant:
    case Kind::SymplecticAction:
      break;
    case Kind::Rotation:
    case Kind::UnitaryDiagonal:
    case Kind::SymplecticExp:
      for (const auto& f : nd.functions)
        for (double x : f.knots()) out.push_back(x);
      break;
    case Kind::Concat: {
      const auto m = static_cast<double>(nd.children.size());
      for (std::size_t k = 0; k < nd.children.size(); ++k) {
        out.push_back(static_cast<double>(k) / m);
        for (double x : nd.children[k].kinks()) out.push_back((static_cast<double>(k) + x) / m);
      }
      break;
    }
    case Kind::Reparam:
      for (double x : nd.functions.front().knots()) out.push_back(x);
      break;
  }
  std::vector<double> clipped;
  for (double x : out)
    if (x > 0.0 && x < 1.0) clipped.push_back(x);
  std::sort(clipped.begin(), clipped.end());
  clipped.erase(std::unique(clipped.begin(), clipped.end()), clipped.end());
  return clipped;
}

}  // namespace mf
