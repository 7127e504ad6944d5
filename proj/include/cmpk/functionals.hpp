#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cmpk/assignment.hpp"
#include "cmpk/geometry.hpp"

namespace cmpk {

enum class FunctionalKind { Value, VertexPartial, NormalDerivative };

const char* to_string(FunctionalKind kind);

/// A point evaluation of an iterated directional derivative
///   prod_j (d/d directions_j)^powers_j  p  (point).
///
/// Vertex partials use the coordinate axes as directions; sub-simplex
/// derivatives use the normal basis of the home sub-simplex's frame.
struct NodalFunctional {
  Vector point;
  FunctionalKind kind = FunctionalKind::Value;
  std::vector<int> powers;  // empty for values
  Matrix directions;        // n x powers.size()
  int order = 0;
  SubSimplex home;             // local to the realizing cell
  std::vector<int> home_key;   // global vertex ids of the home, ascending
  int group = -1;              // DofTable group it came from
  int ordinal = 0;
};

/// Cell-independent identity of a functional: point rounded to 1e-9,
/// derivative description and global home.
struct FunctionalKey {
  std::vector<std::int64_t> point;
  FunctionalKind kind = FunctionalKind::Value;
  std::vector<int> powers;
  std::vector<int> home_key;

  friend bool operator==(const FunctionalKey&, const FunctionalKey&) = default;
  friend auto operator<=>(const FunctionalKey&, const FunctionalKey&) = default;
};

FunctionalKey functional_key(const NodalFunctional& f);

/// Maps the off-sub-simplex components of a multi-index (q entries summing
/// to d) to an exponent tuple over the q normal directions. The r-th
/// distribution in lexicographic order pairs with the r-th monomial in
/// lexicographic order. Throws std::invalid_argument on a size or sum
/// mismatch.
std::vector<int> off_face_bijection(const std::vector<int>& off_components, int d, int q);

/// One functional per multi-index of `table`, in group order then member
/// order. Throws std::runtime_error if two functionals coincide.
std::vector<NodalFunctional> realize_functionals(const DofTable& table, const Simplex& simplex);

/// Members of level 1..n-1 groups that have a zero on-sub-simplex
/// component, i.e. whose point would sit on the sub-simplex boundary.
std::vector<std::string> boundary_placements(const DofTable& table);

}  // namespace cmpk
