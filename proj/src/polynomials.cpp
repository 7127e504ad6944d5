#include "cmpk/polynomials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "compensated.hpp"

namespace cmpk {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double multinomial(const MultiIndex& alpha) {
  double r = factorial(alpha.degree());
  for (int a : alpha.entries()) r /= factorial(a);
  return r;
}

double bernstein_value(const MultiIndex& alpha, const Vector& lambda) {
  double v = multinomial(alpha);
  for (int i = 0; i < alpha.size(); ++i) {
    for (int p = 0; p < alpha[i]; ++p) v *= lambda(i);
  }
  return v;
}

std::vector<int> expand_directions(const std::vector<int>& powers) {
  std::vector<int> list;
  for (std::size_t j = 0; j < powers.size(); ++j) {
    if (powers[j] < 0) throw std::invalid_argument("negative derivative power");
    list.insert(list.end(), static_cast<std::size_t>(powers[j]), static_cast<int>(j));
  }
  return list;
}

MultiIndex shifted(const MultiIndex& alpha, int i, int delta) {
  std::array<int, kMaxDim + 1> e{};
  for (int j = 0; j < alpha.size(); ++j) e[static_cast<std::size_t>(j)] = alpha[j];
  e[static_cast<std::size_t>(i)] += delta;
  return MultiIndex(std::span<const int>(e.data(), static_cast<std::size_t>(alpha.size())));
}

double derivative_rec(const MultiIndex& alpha, const Vector& lambda, const Matrix& slopes,
                      const std::vector<int>& dirs, std::size_t step) {
  if (step == dirs.size()) return bernstein_value(alpha, lambda);
  const int k = alpha.degree();
  double sum = 0.0;
  for (int i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    const double c = slopes(i, dirs[step]);
    if (c == 0.0) continue;
    sum += c * derivative_rec(shifted(alpha, i, -1), lambda, slopes, dirs, step + 1);
  }
  return k * sum;
}

}  // namespace

BernsteinBasis::BernsteinBasis(int degree, Simplex simplex)
    : degree_(degree), simplex_(std::move(simplex)), indices_(enumerate_multiindices(simplex_.dim(), degree)) {}

double BernsteinBasis::eval(const MultiIndex& alpha, const Vector& x) const {
  return bernstein_value(alpha, barycentric_coords(simplex_, x));
}

double BernsteinBasis::derivative(const MultiIndex& alpha, const Vector& x, const Matrix& directions,
                                  const std::vector<int>& powers) const {
  if (alpha.degree() != degree_ || alpha.size() != dim() + 1) throw std::invalid_argument("multi-index does not match basis");
  const auto dirs = expand_directions(powers);
  if (static_cast<int>(dirs.size()) > degree_) return 0.0;
  // slopes(i, j) = grad lambda_i . direction_j
  const Matrix slopes = simplex_.barycentric_gradients().transpose() * directions;
  return derivative_rec(alpha, barycentric_coords(simplex_, x), slopes, dirs, 0);
}

Vector BernsteinBasis::values(const Vector& x) const {
  const Vector lambda = barycentric_coords(simplex_, x);
  Vector out(size());
  for (int j = 0; j < size(); ++j) out(j) = bernstein_value(indices_[static_cast<std::size_t>(j)], lambda);
  return out;
}

Vector BernsteinBasis::derivative_row(const Vector& x, const Matrix& directions, const std::vector<int>& powers) const {
  const int n = dim();
  const auto dirs = expand_directions(powers);
  const int r = static_cast<int>(dirs.size());
  if (directions.cols() != static_cast<Eigen::Index>(powers.size()) || (r > 0 && directions.rows() != n)) {
    throw std::invalid_argument("direction matrix does not match powers");
  }
  if (r > degree_) return Vector::Zero(size());
  if (r == 0) return values(x);

  const Vector lambda = barycentric_coords(simplex_, x);
  const Matrix slopes = simplex_.barycentric_gradients().transpose() * directions;

  // Start from the degree k - r Bernstein values, then apply the adjoint of
  // degree lowering once per direction: coefficient of B^{j+1}_{g+e_i}
  // receives slope_i * (value at g). The k!/(k-r)! factor comes last.
  std::vector<MultiIndex> support;
  std::vector<double> weight;
  for (const auto& g : enumerate_multiindices(n, degree_ - r)) {
    const double v = bernstein_value(g, lambda);
    if (v != 0.0) {
      support.push_back(g);
      weight.push_back(v);
    }
  }
  for (int step = 0; step < r; ++step) {
    const int next_degree = degree_ - r + step + 1;
    std::vector<double> dense(static_cast<std::size_t>(dim_pk(next_degree, n)), 0.0);
    std::vector<char> touched(dense.size(), 0);
    std::vector<MultiIndex> next_support;
    for (std::size_t s = 0; s < support.size(); ++s) {
      for (int i = 0; i <= n; ++i) {
        const double c = slopes(i, dirs[static_cast<std::size_t>(step)]);
        if (c == 0.0) continue;
        MultiIndex up = shifted(support[s], i, +1);
        const auto pos = static_cast<std::size_t>(tuple_rank(up));
        dense[pos] += c * weight[s];
        if (!touched[pos]) {
          touched[pos] = 1;
          next_support.push_back(up);
        }
      }
    }
    weight.clear();
    for (const auto& g : next_support) weight.push_back(dense[static_cast<std::size_t>(tuple_rank(g))]);
    support = std::move(next_support);
  }

  double scale = 1.0;
  for (int i = 0; i < r; ++i) scale *= degree_ - i;
  Vector row = Vector::Zero(size());
  for (std::size_t s = 0; s < support.size(); ++s) row(tuple_rank(support[s])) = scale * weight[s];
  return row;
}

Matrix build_vandermonde(const std::vector<NodalFunctional>& functionals, const BernsteinBasis& basis) {
  if (static_cast<int>(functionals.size()) != basis.size()) {
    throw std::invalid_argument(
        fmt::format("{} functionals for a basis of size {}", functionals.size(), basis.size()));
  }
  Matrix v(basis.size(), basis.size());
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    v.row(static_cast<Eigen::Index>(i)) = basis.apply(functionals[i]).transpose();
  }
  return v;
}

namespace {

Vector row_scaling(const Matrix& v) {
  Vector scale(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double m = v.row(i).cwiseAbs().maxCoeff();
    scale(i) = m > 0.0 ? 1.0 / m : 1.0;
  }
  return scale;
}

// Reciprocal condition below this counts as singular to working precision.
constexpr double kSingularRcond = std::numeric_limits<double>::epsilon();

bool has_zero_pivot(const Eigen::PartialPivLU<Matrix>& lu) {
  const auto diag = lu.matrixLU().diagonal().cwiseAbs();
  return !(diag.minCoeff() > std::numeric_limits<double>::epsilon() * diag.maxCoeff() * 1e-6);
}

}  // namespace

namespace {

// Nonzeros of each row of V; derivative rows at vertices and edges are sparse.
struct SparseRows {
  std::vector<std::vector<std::pair<Eigen::Index, double>>> rows;
  explicit SparseRows(const Matrix& v) : rows(static_cast<std::size_t>(v.rows())) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      for (Eigen::Index i = 0; i < v.rows(); ++i) {
        if (v(i, j) != 0.0) rows[static_cast<std::size_t>(i)].emplace_back(j, v(i, j));
      }
    }
  }
};

struct Residual {
  Matrix r;
  double bound = 0.0;
};

// R = I - V (C_hi + C_lo), accumulated in double-double and rounded. The
// bound covers the double-double products, the plain-double low-order
// terms and the final rounding.
Residual compensated_residual(const SparseRows& v, const Matrix& c_hi, const Matrix& c_lo) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const Eigen::Index size = c_hi.rows();
  Residual out{Matrix(size, size), 0.0};
  for (Eigen::Index j = 0; j < size; ++j) {
    const double* hi = c_hi.col(j).data();
    const double* lo = c_lo.col(j).data();
    for (Eigen::Index i = 0; i < size; ++i) {
      const auto& row = v.rows[static_cast<std::size_t>(i)];
      detail::CompensatedSum acc;
      acc.add(i == j ? -1.0 : 0.0);
      double abs_hi = 0.0;
      double abs_lo = 0.0;
      for (const auto& [l, value] : row) {
        acc.add_product(value, hi[l], lo[l]);
        abs_hi += std::abs(value * hi[l]);
        abs_lo += std::abs(value * lo[l]);
      }
      const double r = -acc.value().hi;
      out.r(i, j) = r;
      const double n_terms = static_cast<double>(row.size() + 2);
      out.bound = std::max(out.bound, n_terms * (eps * eps * abs_hi + eps * abs_lo) + eps * std::abs(r));
    }
  }
  return out;
}

constexpr int kMaxRefinementSteps = 4;

}  // namespace

DualBasis dual_basis(const Matrix& vandermonde) {
  if (vandermonde.rows() != vandermonde.cols()) throw std::invalid_argument("Vandermonde matrix must be square");
  DualBasis out;
  const Eigen::Index size = vandermonde.rows();
  if (size == 0) return out;
  const Vector scale = row_scaling(vandermonde);
  Eigen::PartialPivLU<Matrix> lu(scale.asDiagonal() * vandermonde);
  const double rcond = lu.rcond();
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (has_zero_pivot(lu) || !(rcond > kSingularRcond)) {
    out.singular = true;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  // V^{-1} = (S V)^{-1} S
  out.coeffs = lu.solve(Matrix(scale.asDiagonal()));
  out.coeffs_lo = Matrix::Zero(size, size);

  const SparseRows rows(vandermonde);
  Residual res = compensated_residual(rows, out.coeffs, out.coeffs_lo);
  out.residual = res.r.cwiseAbs().maxCoeff();
  out.residual_bound = res.bound;
  while (out.refinement_steps < kMaxRefinementSteps && out.residual > 0.0) {
    const Matrix delta = lu.solve(scale.asDiagonal() * res.r);
    Matrix hi = out.coeffs;
    Matrix lo = out.coeffs_lo;
    for (Eigen::Index j = 0; j < size; ++j) {
      for (Eigen::Index i = 0; i < size; ++i) {
        const auto [s, e] = detail::two_sum(hi(i, j), delta(i, j));
        const auto [s2, e2] = detail::two_sum(s, lo(i, j) + e);
        hi(i, j) = s2;
        lo(i, j) = e2;
      }
    }
    Residual next = compensated_residual(rows, hi, lo);
    const double next_max = next.r.cwiseAbs().maxCoeff();
    if (!(next_max < out.residual)) break;
    out.coeffs = std::move(hi);
    out.coeffs_lo = std::move(lo);
    res = std::move(next);
    out.residual = next_max;
    out.residual_bound = res.bound;
    ++out.refinement_steps;
  }
  if (!std::isfinite(out.residual)) out.singular = true;
  return out;
}

Vector DualBasis::apply(const Vector& values_hi, const Vector& values_lo) const {
  Vector out(coeffs.rows());
  for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
    detail::CompensatedSum acc;
    for (Eigen::Index l = 0; l < coeffs.cols(); ++l) {
      acc.add_product(coeffs(i, l), values_hi(l), values_lo(l));
      acc.add(coeffs_lo(i, l) * values_hi(l));
    }
    out(i) = acc.value().hi;
  }
  return out;
}

std::pair<Vector, Vector> compensated_product(const Matrix& v, const Vector& x) {
  Vector hi(v.rows());
  Vector lo(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    detail::CompensatedSum acc;
    for (Eigen::Index l = 0; l < v.cols(); ++l) acc.add_product(v(i, l), x(l));
    const auto dd = acc.value();
    hi(i) = dd.hi;
    lo(i) = dd.lo;
  }
  return {hi, lo};
}

Interpolator::Interpolator(Matrix vandermonde)
    : vandermonde_(std::move(vandermonde)), row_scale_(row_scaling(vandermonde_)) {
  if (vandermonde_.rows() != vandermonde_.cols()) throw std::invalid_argument("Vandermonde matrix must be square");
  lu_.compute(row_scale_.asDiagonal() * vandermonde_);
  const double rcond = lu_.rcond();
  condition_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  singular_ = has_zero_pivot(lu_) || !(rcond > kSingularRcond);
}

Vector Interpolator::coefficients(const Vector& functional_values) const {
  if (singular_) throw std::runtime_error("Vandermonde matrix is singular to working precision");
  if (functional_values.size() != vandermonde_.rows()) throw std::invalid_argument("functional value count mismatch");
  Vector x = lu_.solve(row_scale_.cwiseProduct(functional_values));
  // one refinement step against a compensated residual
  Vector r(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    detail::CompensatedSum acc;
    acc.add(functional_values(i));
    for (Eigen::Index l = 0; l < x.size(); ++l) acc.add_product(-vandermonde_(i, l), x(l));
    r(i) = acc.value().hi;
  }
  x += lu_.solve(row_scale_.cwiseProduct(r));
  return x;
}

ElementDefinition assemble_element(const ElementParams& params, const Simplex& simplex) {
  const DofTable table = assign_dofs(params);
  ElementDefinition def{params, simplex, realize_functionals(table, simplex), {}, {}};
  const BernsteinBasis basis(params.k(), simplex);
  def.vandermonde = build_vandermonde(def.functionals, basis);
  def.dual = dual_basis(def.vandermonde);
  return def;
}

}  // namespace cmpk
