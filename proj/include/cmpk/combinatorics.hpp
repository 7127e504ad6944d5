#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cmpk {

/// Largest spatial dimension the enumerators support.
inline constexpr int kMaxDim = 6;

/// Exact binomial coefficient C(n, r); zero when r < 0 or r > n.
std::int64_t binomial(std::int64_t n, std::int64_t r);

/// Dimension of the space of n-variate polynomials of total degree k.
/// By convention dim P_k = 0 for k < 0.
std::int64_t dim_pk(std::int64_t k, int n);

/// Barycentric exponent tuple (a_0, ..., a_n) with non-negative entries.
/// The degree is the entry sum.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::span<const int> entries);
  MultiIndex(std::initializer_list<int> entries);

  int size() const { return size_; }
  int degree() const { return degree_; }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  std::span<const int> entries() const { return {entries_.data(), static_cast<std::size_t>(size_)}; }

  /// Sum of the entries selected by `vertices`.
  int partial_sum(std::span<const int> vertices) const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.size_ == b.size_ && a.entries_ == b.entries_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::array<int, kMaxDim + 1> entries_{};
  int size_ = 0;
  int degree_ = 0;
};

/// Sub-simplex of the reference n-simplex, given by a strictly increasing
/// vertex subset. Its level is its dimension (vertex count minus one).
class SubSimplex {
 public:
  SubSimplex() = default;
  explicit SubSimplex(std::vector<int> vertices);

  int level() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<int>& vertices() const { return vertices_; }
  bool contains(int v) const;
  std::string to_string() const;

  friend bool operator==(const SubSimplex&, const SubSimplex&) = default;
  friend auto operator<=>(const SubSimplex&, const SubSimplex&) = default;

 private:
  std::vector<int> vertices_;
};

/// All multi-indices of length n + 1 and degree k, in the order of the
/// nested loops a_1 (outermost, ascending) ... a_n, with a_0 = k - sum.
std::vector<MultiIndex> enumerate_multiindices(int n, int k);

/// Same lattice without the dimension cap; used for the q-tuples of
/// derivative exponents and for degree-lowered Bernstein bases.
/// Order: entry 1 outermost ascending, entry 0 is the remainder.
std::vector<MultiIndex> enumerate_tuples(int length, int sum);

/// Position of `alpha` within enumerate_tuples(alpha.size(), alpha.degree()).
std::int64_t tuple_rank(const MultiIndex& alpha);

/// All level-`level` sub-simplices of the n-simplex in lexicographic order.
std::vector<SubSimplex> enumerate_subsimplices(int n, int level);

}  // namespace cmpk
