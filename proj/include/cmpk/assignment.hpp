#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmpk/combinatorics.hpp"

namespace cmpk {

/// Parameters of a C^m-P_k^(n) element with k = m * 2^n + 1 + k1.
struct ElementParams {
  int n = 3;
  int m = 1;
  int k1 = 0;

  int k() const { return m * (1 << n) + 1 + k1; }

  /// Highest derivative order carried by level-`level` sub-simplices:
  /// m * 2^(n - 1 - level), and 0 for the cell interior.
  int max_order(int level) const { return level >= n ? 0 : m * (1 << (n - 1 - level)); }

  /// Throws std::invalid_argument unless 1 <= n <= 6, m >= 1, k1 >= 0.
  void validate() const;

  friend bool operator==(const ElementParams&, const ElementParams&) = default;
};

/// Multi-indices owned by one (sub-simplex, derivative order) pair.
/// Every member satisfies sum over the sub-simplex vertices = k - order.
struct DofGroup {
  SubSimplex subsimplex;
  int order = 0;
  std::vector<MultiIndex> members;  // in enumeration order; ordinal = position + 1

  int level() const { return subsimplex.level(); }
  friend bool operator==(const DofGroup&, const DofGroup&) = default;
};

/// Where a multi-index ended up.
struct Placement {
  int group = -1;   // index into DofTable::groups
  int ordinal = 0;  // 1-based position inside the group
  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Partition of all degree-k multi-indices into DofGroups.
///
/// Groups are stored level by level, sub-simplices in lexicographic order,
/// then by derivative order; empty groups are kept so every admissible
/// (sub-simplex, order) pair is present.
struct DofTable {
  ElementParams params;
  std::vector<DofGroup> groups;
  std::vector<MultiIndex> indices;     // enumerate_multiindices(n, k)
  std::vector<Placement> placements;   // parallel to `indices`

  /// Index of the group for (level, sub-simplex position within the level, order).
  int group_index(int level, int subsimplex_pos, int order) const;
  const DofGroup& group(int level, int subsimplex_pos, int order) const {
    return groups[static_cast<std::size_t>(group_index(level, subsimplex_pos, order))];
  }
  std::int64_t size() const { return static_cast<std::int64_t>(indices.size()); }

  friend bool operator==(const DofTable&, const DofTable&) = default;
};

/// Greedy index assignment. Levels are processed in ascending order; within a
/// level, orders ascend and sub-simplices go in lexicographic order. A free
/// multi-index joins group (F, d) iff its sum over F equals k - d.
/// Throws std::runtime_error if any multi-index is left unassigned.
DofTable assign_dofs(const ElementParams& params);

/// Per-level counts as printed by the tabulation report.
struct LevelCount {
  int level = 0;
  std::int64_t entity_count = 0;         // C(n+1, level+1)
  std::vector<std::int64_t> per_order;   // per sub-simplex, orders 0..max_order(level)
  std::int64_t per_entity = 0;           // sum of per_order
  std::int64_t total = 0;                // per_entity * entity_count
};

struct CountReport {
  ElementParams params;
  std::vector<LevelCount> levels;
  std::int64_t grand_total = 0;
  std::int64_t dim = 0;  // dim P_k^(n)
  std::vector<std::string> inconsistencies;

  bool consistent() const { return inconsistencies.empty() && grand_total == dim; }
};

/// Summarizes a table per level and order. Same-level sub-simplices must
/// receive identical counts; any difference is listed in `inconsistencies`.
CountReport group_summary(const DofTable& table);

/// First member of each (first level-2 sub-simplex, order) group, in
/// assignment order; these are the optional "check:" rows of the report.
std::vector<MultiIndex> first_face_members(const DofTable& table);

}  // namespace cmpk
