#include "cmpk/counts.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace cmpk {

namespace {

using i64 = std::int64_t;

i64 exact_div(i64 num, i64 den, const char* what) {
  if (num % den != 0) throw std::logic_error(fmt::format("inexact division {} / {} in {}", num, den, what));
  return num / den;
}

i64 count_2d(i64 m, i64 k1, int level) {
  const i64 k = 4 * m + 1 + k1;
  switch (level) {
    case 0:
      return dim_pk(2 * m, 2);
    case 1: {
      // order-i normal derivatives at k - 4m - 1 + i edge points, i = 0..m
      i64 s = 0;
      for (i64 i = 0; i <= m; ++i) s += k1 + i;
      return s;
    }
    case 2:
      return dim_pk(k - 3 * m - 3, 2);
  }
  throw std::invalid_argument("level outside 0..2");
}

i64 count_3d(i64 m, i64 k1, int level) {
  switch (level) {
    case 0:
      return exact_div((4 * m + 1) * (4 * m + 2) * (4 * m + 3), 6, "3D vertex count");
    case 1: {
      const i64 q = 2 * m + 1;
      return k1 * exact_div(q * q + q, 2, "3D edge count") + exact_div(q * q * q - q, 3, "3D edge count");
    }
    case 2:
      return exact_div((m + 1) * (3 * k1 * k1 + 3 * k1 * (6 * m - 1) + 25 * m * m - 4 * m), 6, "3D face count");
    case 3:
      return exact_div((4 * m + k1 - 2) * (4 * m + k1 - 1) * (4 * m + k1), 6, "3D interior count") -
             exact_div(4 * (m - 2) * (m - 1) * m, 6, "3D interior corner drop");
  }
  throw std::invalid_argument("level outside 0..3");
}

i64 count_4d(i64 m, i64 k1, int level) {
  switch (level) {
    case 0:
      return exact_div((8 * m + 1) * (8 * m + 2) * (8 * m + 3) * (8 * m + 4), 24, "4D vertex count");
    case 1: {
      const i64 m1 = 4 * m + 1;
      return k1 * exact_div(m1 * (m1 + 1) * (m1 + 2), 6, "4D edge count") +
             exact_div((m1 - 1) * m1 * (m1 + 1) * (m1 + 2), 8, "4D edge count");
    }
    case 2:
      return exact_div((m + 1) * (2 * m + 1) * (3 * k1 * k1 + 40 * k1 * m + 118 * m * m - 3 * k1 - 7 * m), 6,
                       "4D face count");
    case 3: {
      // (m+1) * (m(2945m^2-491m+6)/24 + (534m^2-93m+4)k1/12 + (19m-2)k1^2/4 + k1^3/6)
      // The k1 coefficient is often quoted as 546m^2-105m+4; that version overcounts by
      // k1(m+1)m(m-1) per tetrahedron and breaks the dimension identity once m >= 2, k1 >= 1.
      const i64 inner = m * (2945 * m * m - 491 * m + 6) + 2 * (534 * m * m - 93 * m + 4) * k1 +
                        6 * (19 * m - 2) * k1 * k1 + 4 * k1 * k1 * k1;
      return exact_div((m + 1) * inner, 24, "4D tetrahedron count");
    }
    case 4:
      return exact_div((11 * m - 3 + k1) * (11 * m - 2 + k1) * (11 * m - 1 + k1) * (11 * m + k1), 24,
                       "4D interior count") -
             exact_div(5 * (4 * m - 3) * (4 * m - 2) * (4 * m - 1) * (4 * m), 24, "4D interior corner drop") -
             exact_div(10 * (m - 2) * (m - 1) * m * (4 * k1 + 15 * m + 3), 24, "4D interior wedge drop");
  }
  throw std::invalid_argument("level outside 0..4");
}

}  // namespace

std::int64_t closed_form_count(int n, int m, int k1, int level) {
  if (m < 1) throw std::invalid_argument(fmt::format("smoothness m = {} must be at least 1", m));
  if (k1 < 0) throw std::invalid_argument(fmt::format("excess degree k1 = {} must be non-negative", k1));
  switch (n) {
    case 2:
      return count_2d(m, k1, level);
    case 3:
      return count_3d(m, k1, level);
    case 4:
      return count_4d(m, k1, level);
  }
  throw std::invalid_argument(fmt::format("closed forms exist for n in {{2, 3, 4}}, got n = {}", n));
}

DimensionCheck verify_dimension_identity(int n, int m, int k1) {
  const ElementParams params{n, m, k1};
  DimensionCheck check;
  check.dim = dim_pk(params.k(), n);

  CountReport& cf = check.closed_form;
  cf.params = params;
  cf.dim = check.dim;
  for (int level = 0; level <= n; ++level) {
    LevelCount lc;
    lc.level = level;
    lc.entity_count = binomial(n + 1, level + 1);
    lc.per_entity = closed_form_count(n, m, k1, level);
    lc.total = lc.per_entity * lc.entity_count;
    cf.grand_total += lc.total;
    cf.levels.push_back(std::move(lc));
  }
  if (cf.grand_total != check.dim) {
    check.mismatches.push_back(fmt::format("closed-form total {} != dim P_{}^({}) = {}", cf.grand_total,
                                           params.k(), n, check.dim));
  }

  DofTable table;
  try {
    table = assign_dofs(params);
  } catch (const std::exception& e) {
    check.mismatches.push_back(fmt::format("assignment failed: {}", e.what()));
    return check;
  }
  const CountReport enumerated = group_summary(table);
  for (const auto& msg : enumerated.inconsistencies) check.mismatches.push_back("assignment: " + msg);
  for (int level = 0; level <= n; ++level) {
    const auto& a = enumerated.levels[static_cast<std::size_t>(level)];
    const auto& b = cf.levels[static_cast<std::size_t>(level)];
    cf.levels[static_cast<std::size_t>(level)].per_order = a.per_order;
    if (a.per_entity != b.per_entity) {
      check.mismatches.push_back(
          fmt::format("level {}: assignment gives {} per entity, closed form {}", level, a.per_entity, b.per_entity));
    }
  }
  if (enumerated.grand_total != check.dim) {
    check.mismatches.push_back(fmt::format("assignment total {} != dim {}", enumerated.grand_total, check.dim));
  }
  return check;
}

}  // namespace cmpk
