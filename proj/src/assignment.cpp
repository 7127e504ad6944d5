#include "cmpk/assignment.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace cmpk {

void ElementParams::validate() const {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument(fmt::format("dimension n = {} outside 1..{}", n, kMaxDim));
  if (m < 1) throw std::invalid_argument(fmt::format("smoothness m = {} must be at least 1", m));
  if (k1 < 0) throw std::invalid_argument(fmt::format("excess degree k1 = {} must be non-negative", k1));
}

namespace {

struct LevelLayout {
  std::vector<SubSimplex> subsimplices;
  int max_order = 0;
  int first_group = 0;  // group index of (first sub-simplex, order 0)
};

std::vector<LevelLayout> layout(const ElementParams& p) {
  std::vector<LevelLayout> levels;
  int next = 0;
  for (int level = 0; level <= p.n; ++level) {
    LevelLayout l{enumerate_subsimplices(p.n, level), p.max_order(level), next};
    next += static_cast<int>(l.subsimplices.size()) * (l.max_order + 1);
    levels.push_back(std::move(l));
  }
  return levels;
}

}  // namespace

int DofTable::group_index(int level, int subsimplex_pos, int order) const {
  if (level < 0 || level > params.n) throw std::out_of_range("level out of range");
  const int orders = params.max_order(level) + 1;
  if (order < 0 || order >= orders) throw std::out_of_range("order out of range");
  const auto count = binomial(params.n + 1, level + 1);
  if (subsimplex_pos < 0 || subsimplex_pos >= count) throw std::out_of_range("sub-simplex out of range");
  int base = 0;
  for (int l = 0; l < level; ++l) {
    base += static_cast<int>(binomial(params.n + 1, l + 1)) * (params.max_order(l) + 1);
  }
  return base + subsimplex_pos * orders + order;
}

DofTable assign_dofs(const ElementParams& params) {
  params.validate();
  const int k = params.k();
  const auto levels = layout(params);

  DofTable table;
  table.params = params;
  for (const auto& l : levels) {
    for (const auto& f : l.subsimplices) {
      for (int d = 0; d <= l.max_order; ++d) table.groups.push_back(DofGroup{f, d, {}});
    }
  }
  table.indices = enumerate_multiindices(params.n, k);
  table.placements.assign(table.indices.size(), Placement{});

  // A multi-index goes to the first (level, order, sub-simplex) pair in
  // priority order whose sum condition it meets. Scanning indices in
  // enumeration order keeps the ordinals of the greedy scan.
  for (std::size_t i = 0; i < table.indices.size(); ++i) {
    const MultiIndex& alpha = table.indices[i];
    int owner = -1;
    for (const auto& l : levels) {
      int best_order = l.max_order + 1;
      int best_pos = -1;
      for (std::size_t s = 0; s < l.subsimplices.size(); ++s) {
        const int d = k - alpha.partial_sum(l.subsimplices[s].vertices());
        if (d >= 0 && d < best_order) {
          best_order = d;
          best_pos = static_cast<int>(s);
        }
      }
      if (best_pos >= 0) {
        owner = l.first_group + best_pos * (l.max_order + 1) + best_order;
        break;
      }
    }
    if (owner < 0) {
      throw std::runtime_error(fmt::format("multi-index {} left unassigned for (n, m, k1) = ({}, {}, {})",
                                           alpha.to_string(), params.n, params.m, params.k1));
    }
    auto& members = table.groups[static_cast<std::size_t>(owner)].members;
    members.push_back(alpha);
    table.placements[i] = Placement{owner, static_cast<int>(members.size())};
  }
  return table;
}

CountReport group_summary(const DofTable& table) {
  const auto& p = table.params;
  CountReport report;
  report.params = p;
  report.dim = dim_pk(p.k(), p.n);
  for (int level = 0; level <= p.n; ++level) {
    LevelCount lc;
    lc.level = level;
    lc.entity_count = binomial(p.n + 1, level + 1);
    const int orders = p.max_order(level) + 1;
    for (int d = 0; d < orders; ++d) {
      const auto first = static_cast<std::int64_t>(table.group(level, 0, d).members.size());
      for (int s = 1; s < lc.entity_count; ++s) {
        const auto& g = table.group(level, s, d);
        if (static_cast<std::int64_t>(g.members.size()) != first) {
          report.inconsistencies.push_back(fmt::format("level {} order {}: sub-simplex {} has {} members, first has {}",
                                                       level, d, g.subsimplex.to_string(), g.members.size(), first));
        }
      }
      lc.per_order.push_back(first);
      lc.per_entity += first;
    }
    lc.total = lc.per_entity * lc.entity_count;
    report.grand_total += lc.total;
    report.levels.push_back(std::move(lc));
  }
  if (report.grand_total != table.size()) {
    report.inconsistencies.push_back(
        fmt::format("summed counts {} differ from table size {}", report.grand_total, table.size()));
  }
  return report;
}

std::vector<MultiIndex> first_face_members(const DofTable& table) {
  std::vector<MultiIndex> out;
  if (table.params.n < 2) return out;
  for (int d = 0; d <= table.params.max_order(2); ++d) {
    const auto& g = table.group(2, 0, d);
    if (!g.members.empty()) out.push_back(g.members.front());
  }
  return out;
}

}  // namespace cmpk
