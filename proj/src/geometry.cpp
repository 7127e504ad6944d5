#include "cmpk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace cmpk {

namespace {

constexpr double kDegenerateVolume = 1e-12;
constexpr double kDependenceThreshold = 1e-10;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Orthogonalizes `v` against the columns of `basis`; two passes keep the
// result orthogonal to machine precision.
Vector orthogonalize(Vector v, const std::vector<Vector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) v -= b.dot(v) * b;
  }
  return v;
}

Matrix to_matrix(const std::vector<Vector>& cols, int rows) {
  Matrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
  return m;
}

}  // namespace

Simplex::Simplex(Matrix vertices, std::vector<int> global_ids)
    : vertices_(std::move(vertices)), global_ids_(std::move(global_ids)) {
  const auto n = vertices_.rows();
  if (n < 1 || vertices_.cols() != n + 1) {
    throw std::invalid_argument(fmt::format("simplex needs n x (n+1) vertex matrix, got {} x {}", n, vertices_.cols()));
  }
  if (global_ids_.empty()) {
    global_ids_.resize(static_cast<std::size_t>(n + 1));
    std::iota(global_ids_.begin(), global_ids_.end(), 0);
  }
  if (static_cast<Eigen::Index>(global_ids_.size()) != n + 1) {
    throw std::invalid_argument("one global id per vertex required");
  }
  auto sorted = global_ids_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("global vertex ids must be distinct");
  }

  Matrix edges(n, n);
  for (Eigen::Index j = 0; j < n; ++j) edges.col(j) = vertices_.col(j + 1) - vertices_.col(0);
  Eigen::FullPivLU<Matrix> lu(edges);
  volume_ = std::abs(lu.determinant()) / factorial(static_cast<int>(n));
  const double scale = std::pow(edges.colwise().norm().maxCoeff(), static_cast<double>(n));
  if (!(volume_ > kDegenerateVolume * scale) || !lu.isInvertible()) {
    throw std::invalid_argument(fmt::format("degenerate simplex (volume {:.3e})", volume_));
  }
  inverse_edges_ = lu.inverse();

  gradients_.resize(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) gradients_.col(i + 1) = inverse_edges_.row(i).transpose();
  gradients_.col(0) = -gradients_.rightCols(n).rowwise().sum();
}

Simplex Simplex::reference(int n) {
  Matrix v = Matrix::Zero(n, n + 1);
  for (int i = 0; i < n; ++i) v(i, i + 1) = 1.0;
  return Simplex(std::move(v));
}

std::vector<int> Simplex::global_key(const SubSimplex& f) const {
  std::vector<int> key;
  for (int v : f.vertices()) key.push_back(global_ids_.at(static_cast<std::size_t>(v)));
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<Vector> Simplex::sorted_vertex_coords(const SubSimplex& f) const {
  std::vector<int> local = f.vertices();
  std::sort(local.begin(), local.end(), [&](int a, int b) {
    return global_ids_[static_cast<std::size_t>(a)] < global_ids_[static_cast<std::size_t>(b)];
  });
  std::vector<Vector> coords;
  for (int v : local) coords.push_back(vertices_.col(v));
  return coords;
}

Vector barycentric_coords(const Simplex& simplex, const Vector& point) {
  const int n = simplex.dim();
  if (point.size() != n) throw std::invalid_argument("point dimension differs from simplex dimension");
  Vector lambda(n + 1);
  lambda.tail(n) = simplex.inverse_edges_ * (point - simplex.vertices_.col(0));
  lambda(0) = 1.0 - lambda.tail(n).sum();
  return lambda;
}

NormalFrame normal_frame(const std::vector<Vector>& sub_vertex_coords) {
  if (sub_vertex_coords.empty()) throw std::invalid_argument("normal frame needs at least one vertex");
  const auto n = static_cast<int>(sub_vertex_coords.front().size());
  const int level = static_cast<int>(sub_vertex_coords.size()) - 1;
  if (level > n) throw std::invalid_argument("more sub-simplex vertices than ambient dimension allows");

  std::vector<Vector> tangent;
  double diameter = 0.0;
  for (int j = 1; j <= level; ++j) {
    diameter = std::max(diameter, (sub_vertex_coords[static_cast<std::size_t>(j)] - sub_vertex_coords[0]).norm());
  }
  for (int j = 1; j <= level; ++j) {
    Vector v = orthogonalize(sub_vertex_coords[static_cast<std::size_t>(j)] - sub_vertex_coords[0], tangent);
    const double r = v.norm();
    if (r <= kDependenceThreshold * std::max(diameter, 1.0)) {
      throw std::invalid_argument("degenerate sub-simplex: affinely dependent vertices");
    }
    tangent.push_back(v / r);
  }

  std::vector<Vector> span = tangent;
  std::vector<Vector> normal;
  for (int axis = 0; axis < n && static_cast<int>(normal.size()) < n - level; ++axis) {
    Vector v = orthogonalize(Vector::Unit(n, axis), span);
    const double r = v.norm();
    if (r < kDependenceThreshold) continue;
    v /= r;
    span.push_back(v);
    normal.push_back(std::move(v));
  }
  return NormalFrame{to_matrix(tangent, n), to_matrix(normal, n)};
}

}  // namespace cmpk
