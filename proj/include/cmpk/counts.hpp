#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmpk/assignment.hpp"

namespace cmpk {

/// Closed-form number of degrees of freedom carried by one level-`level`
/// sub-simplex of a C^m-P_k^(n) element, n in {2, 3, 4}.
///
/// All formulas are evaluated in exact integer arithmetic; every division
/// is checked to be exact and a std::logic_error is thrown otherwise.
std::int64_t closed_form_count(int n, int m, int k1, int level);

/// Result of comparing closed forms, the enumerated table and dim P_k.
struct DimensionCheck {
  CountReport closed_form;               // levels filled from closed_form_count
  std::int64_t dim = 0;                  // dim P_k^(n)
  std::vector<std::string> mismatches;   // empty when everything agrees

  bool ok() const { return mismatches.empty(); }
};

/// Sums entity_count * closed_form_count over all levels, compares it with
/// dim P_k^(n), and compares every level against the greedy assignment.
/// Mismatches are reported, never thrown.
DimensionCheck verify_dimension_identity(int n, int m, int k1);

}  // namespace cmpk
