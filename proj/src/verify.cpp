#include "cmpk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "cmpk/counts.hpp"
#include "cmpk/functionals.hpp"

namespace cmpk {

namespace {

// Uniform point in the standard simplex from sorted uniforms.
Vector random_barycentric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> cuts(static_cast<std::size_t>(n));
  for (auto& c : cuts) c = unit(rng);
  std::sort(cuts.begin(), cuts.end());
  Vector lambda(n + 1);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    lambda(i) = cuts[static_cast<std::size_t>(i)] - prev;
    prev = cuts[static_cast<std::size_t>(i)];
  }
  lambda(n) = 1.0 - prev;
  return lambda;
}

double radical_inverse(int index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  for (int i = index; i > 0; i /= base) {
    result += f * (i % base);
    f /= base;
  }
  return result;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13};

}  // namespace

UnisolvencyReport check_unisolvency(const ElementParams& params, const Simplex& simplex, double threshold) {
  const ElementDefinition element = assemble_element(params, simplex);
  UnisolvencyReport r;
  r.params = params;
  r.size = static_cast<std::int64_t>(element.functionals.size());
  r.residual = element.dual.residual;
  r.residual_bound = element.dual.residual_bound;
  r.condition_estimate = element.dual.condition_estimate;
  r.threshold = threshold;
  r.singular = element.dual.singular;
  r.pass = !r.singular && r.residual + r.residual_bound < threshold;
  return r;
}

ReproductionReport interpolation_reproduction(const ElementDefinition& element, std::uint64_t seed, int probes) {
  if (element.dual.singular) throw std::runtime_error("element is not unisolvent; nothing to reproduce");
  const int n = element.params.n;
  const BernsteinBasis basis(element.params.k(), element.simplex);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Vector p(basis.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = coeff(rng);

  const auto [values_hi, values_lo] = compensated_product(element.vandermonde, p);
  const Vector q = element.dual.apply(values_hi, values_lo);

  ReproductionReport r;
  r.probes = probes;
  const double eps = std::numeric_limits<double>::epsilon();
  const double residual = std::max(element.dual.residual + element.dual.residual_bound, eps);
  r.tolerance = 10.0 * static_cast<double>(basis.size()) * residual * p.cwiseAbs().maxCoeff();
  for (int s = 0; s < probes; ++s) {
    const Vector x = element.simplex.point(random_barycentric(n, rng));
    const Vector b = basis.values(x);
    r.max_error = std::max(r.max_error, std::abs(b.dot(p) - b.dot(q)));
  }
  r.pass = r.max_error <= r.tolerance;
  return r;
}

CellPair::CellPair(Simplex a, Simplex b) : cell_a(std::move(a)), cell_b(std::move(b)) {
  const int n = cell_a.dim();
  if (cell_b.dim() != n) throw std::invalid_argument("cells of different dimension");
  std::map<int, int> b_local;
  for (int i = 0; i <= n; ++i) b_local[cell_b.global_ids()[static_cast<std::size_t>(i)]] = i;
  int a_only = -1;
  for (int i = 0; i <= n; ++i) {
    const int id = cell_a.global_ids()[static_cast<std::size_t>(i)];
    auto it = b_local.find(id);
    if (it == b_local.end()) {
      a_only = i;
      continue;
    }
    if ((cell_a.vertex(i) - cell_b.vertex(it->second)).norm() > 1e-12) {
      throw std::invalid_argument(fmt::format("vertex id {} has different coordinates in the two cells", id));
    }
    shared.push_back(id);
  }
  if (static_cast<int>(shared.size()) != n) {
    throw std::invalid_argument(fmt::format("cells share {} vertices, a facet needs {}", shared.size(), n));
  }
  std::sort(shared.begin(), shared.end());
  int b_only = -1;
  for (int i = 0; i <= n; ++i) {
    if (!std::binary_search(shared.begin(), shared.end(), cell_b.global_ids()[static_cast<std::size_t>(i)])) b_only = i;
  }
  std::vector<Vector> facet;
  for (int id : shared) facet.push_back(cell_a.vertex(static_cast<int>(
      std::find(cell_a.global_ids().begin(), cell_a.global_ids().end(), id) - cell_a.global_ids().begin())));
  const Vector normal = normal_frame(facet).normal.col(0);
  const double side_a = normal.dot(cell_a.vertex(a_only) - facet[0]);
  const double side_b = normal.dot(cell_b.vertex(b_only) - facet[0]);
  if (!(side_a * side_b < 0.0)) throw std::invalid_argument("cells lie on the same side of their common facet");
}

CellPair CellPair::standard(int n) {
  Simplex a = Simplex::reference(n);
  // Cell B: ids (n, n+1, 1, ..., n-1); vertex n+1 lies beyond sum x = 1.
  Matrix vb(n, n + 1);
  std::vector<int> ids;
  Vector apex(n);
  for (int i = 0; i < n; ++i) apex(i) = 0.8 + 0.1 * i;
  vb.col(0) = a.vertex(n);
  ids.push_back(n);
  vb.col(1) = apex;
  ids.push_back(n + 1);
  for (int i = 1; i < n; ++i) {
    vb.col(i + 1) = a.vertex(i);
    ids.push_back(i);
  }
  return CellPair(std::move(a), Simplex(std::move(vb), std::move(ids)));
}

bool JumpReport::pass() const {
  if (orders.size() < static_cast<std::size_t>(params.m) + 1) return false;
  for (int d = 0; d <= params.m; ++d) {
    if (!orders[static_cast<std::size_t>(d)].pass) return false;
  }
  return true;
}

std::vector<Vector> facet_samples(const std::vector<Vector>& vertices, int count, double margin) {
  const int q = static_cast<int>(vertices.size());
  if (q < 1 || q - 1 > static_cast<int>(std::size(kPrimes))) throw std::invalid_argument("unsupported facet size");
  if (!(margin >= 0.0 && margin * q < 1.0)) throw std::invalid_argument("margin too large for facet");
  std::vector<Vector> out;
  for (int s = 1; s <= count; ++s) {
    std::vector<double> cuts;
    for (int j = 0; j < q - 1; ++j) cuts.push_back(radical_inverse(s, kPrimes[j]));
    std::sort(cuts.begin(), cuts.end());
    Vector point = Vector::Zero(vertices.front().size());
    double prev = 0.0;
    for (int j = 0; j < q; ++j) {
      const double cut = j < q - 1 ? cuts[static_cast<std::size_t>(j)] : 1.0;
      const double mu = margin + (1.0 - q * margin) * (cut - prev);
      prev = cut;
      point += mu * vertices[static_cast<std::size_t>(j)];
    }
    out.push_back(std::move(point));
  }
  return out;
}

namespace {

bool within(const std::vector<int>& key, const std::vector<int>& shared) {
  return std::includes(shared.begin(), shared.end(), key.begin(), key.end());
}

struct CellData {
  std::vector<NodalFunctional> functionals;
  std::vector<std::size_t> shared;  // indices of functionals homed on the common facet
};

CellData collect(const DofTable& table, const Simplex& cell, const std::vector<int>& shared_ids) {
  CellData d{realize_functionals(table, cell), {}};
  for (std::size_t i = 0; i < d.functionals.size(); ++i) {
    if (within(d.functionals[i].home_key, shared_ids)) d.shared.push_back(i);
  }
  return d;
}

Vector local_coefficients(const ElementParams& params, const Simplex& cell, const std::vector<NodalFunctional>& fs,
                          const Vector& dof_values) {
  const BernsteinBasis basis(params.k(), cell);
  Interpolator interp(build_vandermonde(fs, basis));
  if (interp.singular()) throw std::runtime_error("cell element is not unisolvent");
  return interp.coefficients(dof_values);
}

}  // namespace

JumpReport continuity_jump_test(const ElementParams& params, const CellPair& pair, std::uint64_t seed,
                                const JumpOptions& options) {
  params.validate();
  if (pair.cell_a.dim() != params.n) throw std::invalid_argument("cell dimension differs from params.n");
  const DofTable table = assign_dofs(params);
  const CellData a = collect(table, pair.cell_a, pair.shared);
  const CellData b = collect(table, pair.cell_b, pair.shared);

  std::map<FunctionalKey, std::size_t> a_keys;
  for (std::size_t i : a.shared) a_keys.emplace(functional_key(a.functionals[i]), i);
  std::map<std::size_t, std::size_t> b_from_a;
  for (std::size_t j : b.shared) {
    auto it = a_keys.find(functional_key(b.functionals[j]));
    if (it == a_keys.end()) {
      const auto& f = b.functionals[j];
      throw std::runtime_error(fmt::format("shared functional {} ({} order {}) of cell B has no counterpart in cell A",
                                           j, to_string(f.kind), f.order));
    }
    b_from_a[j] = it->second;
  }
  if (a.shared.size() != b.shared.size()) {
    throw std::runtime_error(fmt::format("cell A has {} shared functionals, cell B {}", a.shared.size(), b.shared.size()));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  auto draw = [&] { return options.zero_coefficients ? 0.0 : coeff(rng); };
  Vector ca(static_cast<Eigen::Index>(a.functionals.size()));
  for (Eigen::Index i = 0; i < ca.size(); ++i) ca(i) = draw();
  Vector cb(static_cast<Eigen::Index>(b.functionals.size()));
  for (Eigen::Index j = 0; j < cb.size(); ++j) {
    auto it = b_from_a.find(static_cast<std::size_t>(j));
    cb(j) = it != b_from_a.end() ? ca(static_cast<Eigen::Index>(it->second)) : draw();
  }

  const Vector coef_a = local_coefficients(params, pair.cell_a, a.functionals, ca);
  const Vector coef_b = local_coefficients(params, pair.cell_b, b.functionals, cb);
  const BernsteinBasis basis_a(params.k(), pair.cell_a);
  const BernsteinBasis basis_b(params.k(), pair.cell_b);

  std::vector<Vector> facet;
  for (int id : pair.shared) {
    const auto& ids = pair.cell_a.global_ids();
    facet.push_back(pair.cell_a.vertex(static_cast<int>(std::find(ids.begin(), ids.end(), id) - ids.begin())));
  }
  const Matrix normal = normal_frame(facet).normal;
  const auto samples = facet_samples(facet, options.samples);

  JumpReport report;
  report.params = params;
  report.seed = seed;
  report.samples = static_cast<int>(samples.size());
  report.shared_functionals = static_cast<int>(a.shared.size());
  report.tolerance = options.tolerance;
  for (int d = 0; d <= params.m + 1; ++d) {
    OrderJump oj;
    oj.order = d;
    const std::vector<int> powers{d};
    for (const auto& x : samples) {
      const double va = basis_a.derivative_row(x, normal, powers).dot(coef_a);
      const double vb = basis_b.derivative_row(x, normal, powers).dot(coef_b);
      oj.max_jump = std::max(oj.max_jump, std::abs(va - vb));
      oj.scale = std::max({oj.scale, std::abs(va), std::abs(vb)});
    }
    oj.relative = oj.scale > 0.0 ? oj.max_jump / oj.scale : 0.0;
    oj.pass = oj.relative < options.tolerance;
    report.orders.push_back(oj);
  }
  return report;
}

std::vector<std::string> check_partition(const DofTable& table) {
  std::vector<std::string> out;
  const int k = table.params.k();
  const auto expected = dim_pk(k, table.params.n);
  std::int64_t members = 0;
  std::set<MultiIndex> seen;
  for (const auto& g : table.groups) {
    for (const auto& alpha : g.members) {
      ++members;
      if (!seen.insert(alpha).second) out.push_back(fmt::format("{} appears twice", alpha.to_string()));
      if (alpha.partial_sum(g.subsimplex.vertices()) != k - g.order) {
        out.push_back(fmt::format("{} violates the sum condition of group {} order {}", alpha.to_string(),
                                  g.subsimplex.to_string(), g.order));
      }
    }
  }
  if (members != expected) out.push_back(fmt::format("{} members, dim P_k = {}", members, expected));
  return out;
}

SweepReport oracle_sweep(int n_max, int m_max, int k1_max, int m_max_4d) {
  SweepReport report;
  for (int n = 2; n <= std::min(n_max, 4); ++n) {
    const int mm = n == 4 ? std::min(m_max, m_max_4d) : m_max;
    for (int m = 1; m <= mm; ++m) {
      for (int k1 = 0; k1 <= k1_max; ++k1) {
        SweepCase c;
        c.params = ElementParams{n, m, k1};
        c.dim = dim_pk(c.params.k(), n);
        try {
          const DofTable table = assign_dofs(c.params);
          c.total = table.size();
          for (auto& msg : check_partition(table)) c.failures.push_back(std::move(msg));
          const DimensionCheck check = verify_dimension_identity(n, m, k1);
          for (const auto& msg : check.mismatches) c.failures.push_back(msg);
          c.total = check.closed_form.grand_total;
        } catch (const std::exception& e) {
          c.failures.push_back(e.what());
        }
        report.cases.push_back(std::move(c));
      }
    }
  }
  return report;
}

bool SweepReport::ok() const {
  return std::all_of(cases.begin(), cases.end(), [](const SweepCase& c) { return c.ok(); });
}

const SweepCase* SweepReport::first_failure() const {
  for (const auto& c : cases) {
    if (!c.ok()) return &c;
  }
  return nullptr;
}

}  // namespace cmpk
