#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cmpk/assignment.hpp"
#include "cmpk/functionals.hpp"
#include "cmpk/geometry.hpp"

namespace cmpk {

/// Degree-k Bernstein basis B_a = k!/(prod a_i!) prod lambda_i^a_i on a simplex,
/// indexed by enumerate_multiindices(n, k).
class BernsteinBasis {
 public:
  BernsteinBasis(int degree, Simplex simplex);

  int degree() const { return degree_; }
  int dim() const { return simplex_.dim(); }
  int size() const { return static_cast<int>(indices_.size()); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const Simplex& simplex() const { return simplex_; }

  double eval(const MultiIndex& alpha, const Vector& x) const;

  /// Iterated directional derivative prod_j D_{directions_j}^{powers_j} B_alpha(x)
  /// by the degree-lowering recursion D_u B^k_a = k sum_i (grad lambda_i . u) B^{k-1}_{a-e_i}.
  /// Orders above k give 0.
  double derivative(const MultiIndex& alpha, const Vector& x, const Matrix& directions,
                    const std::vector<int>& powers) const;

  /// The same derivative applied to every basis function at once, in index order.
  Vector derivative_row(const Vector& x, const Matrix& directions, const std::vector<int>& powers) const;

  /// Values of all basis functions at x.
  Vector values(const Vector& x) const;

  /// f(B_j) for all j.
  Vector apply(const NodalFunctional& f) const { return derivative_row(f.point, f.directions, f.powers); }

 private:
  int degree_;
  Simplex simplex_;
  std::vector<MultiIndex> indices_;
};

/// V(i, j) = functionals[i](B_j). Throws std::invalid_argument unless square.
Matrix build_vandermonde(const std::vector<NodalFunctional>& functionals, const BernsteinBasis& basis);

/// Dual basis C = V^{-1}, carried as coeffs + coeffs_lo (double-double).
/// Column j holds the Bernstein coefficients of the nodal function phi_j.
struct DualBasis {
  Matrix coeffs;
  Matrix coeffs_lo;
  double residual = 0.0;            // max |V C - I|, evaluated in compensated arithmetic
  double residual_bound = 0.0;      // rounding-error bound of that evaluation
  double condition_estimate = 0.0;  // 1-norm estimate for the row-equilibrated V
  int refinement_steps = 0;
  bool singular = false;

  /// Coefficients of the interpolant of `functional_values` (hi + lo parts
  /// combined in compensated arithmetic, rounded to double).
  Vector apply(const Vector& functional_values_hi, const Vector& functional_values_lo) const;
};

/// Dense LU with partial pivoting on the row-equilibrated matrix, followed
/// by iterative refinement with compensated residuals. Large derivative
/// rows make max |V C - I| lose ~ eps |V_i| |C_j| when C is held in plain
/// double; the low-order part removes that floor. A pivot that is zero to
/// working precision gives singular = true instead of throwing.
DualBasis dual_basis(const Matrix& vandermonde);

/// y = V x with compensated accumulation, returned as (hi, lo).
std::pair<Vector, Vector> compensated_product(const Matrix& v, const Vector& x);

/// Factorized Vandermonde system of one element; maps functional values to
/// Bernstein coefficients without forming the inverse.
class Interpolator {
 public:
  /// Keeps a copy of V for one step of compensated refinement per solve.
  explicit Interpolator(Matrix vandermonde);

  Vector coefficients(const Vector& functional_values) const;
  double condition_estimate() const { return condition_; }
  bool singular() const { return singular_; }

 private:
  Matrix vandermonde_;
  Vector row_scale_;
  Eigen::PartialPivLU<Matrix> lu_;
  double condition_ = 0.0;
  bool singular_ = false;
};

/// Local data of one realized element.
struct ElementDefinition {
  ElementParams params;
  Simplex simplex;
  std::vector<NodalFunctional> functionals;
  Matrix vandermonde;
  DualBasis dual;
};

ElementDefinition assemble_element(const ElementParams& params, const Simplex& simplex);

}  // namespace cmpk
