#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmpk/assignment.hpp"
#include "cmpk/geometry.hpp"
#include "cmpk/polynomials.hpp"

namespace cmpk {

// --- unisolvency -----------------------------------------------------------

struct UnisolvencyReport {
  ElementParams params;
  std::int64_t size = 0;
  double residual = 0.0;        // max |V C - I|
  double residual_bound = 0.0;  // rounding bound on that evaluation
  double condition_estimate = 0.0;
  double threshold = 1e-8;
  bool singular = false;
  bool pass = false;
};

/// Assembles the element on `simplex` and checks its dual basis:
/// pass iff not singular and residual + bound < threshold.
UnisolvencyReport check_unisolvency(const ElementParams& params, const Simplex& simplex, double threshold = 1e-8);

struct ReproductionReport {
  double max_error = 0.0;
  double tolerance = 0.0;
  int probes = 0;
  bool pass = false;
};

/// Interpolates a random P_k polynomial (Bernstein coefficients uniform in
/// [-1, 1]) through its functional values and compares it with the original
/// at `probes` random points of the cell. Tolerance: 10 N max(residual, eps) |p|.
ReproductionReport interpolation_reproduction(const ElementDefinition& element, std::uint64_t seed, int probes = 10);

// --- two-cell continuity ---------------------------------------------------

/// Two cells sharing a facet, identified by global vertex ids.
struct CellPair {
  Simplex cell_a;
  Simplex cell_b;
  std::vector<int> shared;  // global ids of the common facet, ascending

  /// Validates that exactly n ids are shared with identical coordinates and
  /// that the two opposite vertices lie on different sides of the facet.
  CellPair(Simplex a, Simplex b);

  /// Unit right simplex (ids 0..n) and a second cell across the facet
  /// opposite vertex 0, listed in a shuffled local vertex order.
  static CellPair standard(int n);
};

struct OrderJump {
  int order = 0;
  double max_jump = 0.0;
  double scale = 0.0;     // max |normal derivative| over the samples, both cells
  double relative = 0.0;  // max_jump / scale (0 when scale is 0)
  bool pass = false;
};

struct JumpReport {
  ElementParams params;
  std::uint64_t seed = 0;
  int samples = 0;
  int shared_functionals = 0;
  double tolerance = 1e-7;
  std::vector<OrderJump> orders;  // 0..m+1; order m+1 is reported but not required to pass

  /// Orders 0..m all below tolerance.
  bool pass() const;
  /// Relative jump of order m + 1.
  double power() const { return orders.empty() ? 0.0 : orders.back().relative; }
};

struct JumpOptions {
  double tolerance = 1e-7;
  int samples = 32;
  bool zero_coefficients = false;
};

/// Draws seeded coefficients for every functional of cell A and the
/// non-shared ones of cell B, copies shared coefficients from A to B by
/// geometric key, and compares the two local polynomials' normal
/// derivatives (facet frame) of orders 0..m+1 at Halton points inside the
/// facet (barycentric margin 0.05). Throws std::runtime_error if a shared
/// functional has no counterpart in the other cell.
JumpReport continuity_jump_test(const ElementParams& params, const CellPair& pair, std::uint64_t seed,
                                const JumpOptions& options = {});

/// Points strictly inside the facet spanned by `vertices` (its n points in
/// R^n): Halton sequence mapped to barycentric coordinates >= margin.
std::vector<Vector> facet_samples(const std::vector<Vector>& vertices, int count, double margin = 0.05);

// --- oracle sweep ----------------------------------------------------------

struct SweepCase {
  ElementParams params;
  std::int64_t dim = 0;
  std::int64_t total = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct SweepReport {
  std::vector<SweepCase> cases;
  bool ok() const;
  const SweepCase* first_failure() const;
};

/// For n = 2..n_max, m = 1..m_max (m_max_4d when n = 4) and k1 = 0..k1_max:
/// checks the partition and membership of the assignment, same-level count
/// homogeneity, closed forms and the dimension identity.
SweepReport oracle_sweep(int n_max, int m_max, int k1_max, int m_max_4d = 2);

/// Partition and membership checks on one table; messages for each violation.
std::vector<std::string> check_partition(const DofTable& table);

}  // namespace cmpk
