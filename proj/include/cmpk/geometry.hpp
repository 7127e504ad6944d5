#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cmpk/combinatorics.hpp"

namespace cmpk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Affine n-simplex in R^n.
///
/// Vertices are stored as the columns of an n x (n+1) matrix. Each vertex
/// also carries a global id; sub-simplex frames and functional keys are
/// built from vertices sorted by global id, so cells sharing vertices (same
/// ids, same coordinates) see identical shared functionals.
class Simplex {
 public:
  /// Throws std::invalid_argument for a degenerate or ill-shaped input.
  explicit Simplex(Matrix vertices, std::vector<int> global_ids = {});

  /// Unit right simplex {x >= 0, sum x <= 1} with ids 0..n.
  static Simplex reference(int n);

  int dim() const { return static_cast<int>(vertices_.rows()); }
  const Matrix& vertices() const { return vertices_; }
  Vector vertex(int i) const { return vertices_.col(i); }
  const std::vector<int>& global_ids() const { return global_ids_; }
  /// Column i is grad(lambda_i); the columns sum to zero.
  const Matrix& barycentric_gradients() const { return gradients_; }
  double volume() const { return volume_; }

  /// Physical point of the barycentric combination sum lambda_i v_i.
  Vector point(const Vector& lambda) const { return vertices_ * lambda; }

  /// Global ids of a local sub-simplex, ascending.
  std::vector<int> global_key(const SubSimplex& f) const;
  /// Coordinates of a local sub-simplex's vertices in ascending global-id order.
  std::vector<Vector> sorted_vertex_coords(const SubSimplex& f) const;

 private:
  Matrix vertices_;
  std::vector<int> global_ids_;
  Matrix gradients_;
  Matrix inverse_edges_;
  double volume_ = 0.0;

  friend Vector barycentric_coords(const Simplex& simplex, const Vector& point);
};

/// lambda with sum lambda_i = 1 and sum lambda_i v_i = point.
Vector barycentric_coords(const Simplex& simplex, const Vector& point);

/// Orthonormal tangent and normal bases of a sub-simplex embedded in R^n.
struct NormalFrame {
  Matrix tangent;  // n x level
  Matrix normal;   // n x (n - level)
};

/// Frame from the sub-simplex vertex coordinates, given in ascending
/// global-vertex order. Tangents: Gram-Schmidt on v_j - v_0. Normals:
/// Gram-Schmidt of the coordinate axes e_1..e_n in order against the span
/// so far, skipping axes whose residual norm is below 1e-10.
NormalFrame normal_frame(const std::vector<Vector>& sub_vertex_coords);

}  // namespace cmpk
