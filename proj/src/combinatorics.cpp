#include "cmpk/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace cmpk {

std::int64_t binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  __int128 result = 1;
  for (std::int64_t i = 0; i < r; ++i) {
    result = result * (n - i) / (i + 1);
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t dim_pk(std::int64_t k, int n) {
  if (k < 0 || n < 0) return 0;
  return binomial(k + n, n);
}

MultiIndex::MultiIndex(std::span<const int> entries) {
  if (entries.size() > entries_.size()) {
    throw std::invalid_argument(fmt::format("multi-index longer than {}", entries_.size()));
  }
  size_ = static_cast<int>(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    entries_[i] = entries[i];
    degree_ += entries[i];
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::span<const int>(entries.begin(), entries.size())) {}

int MultiIndex::partial_sum(std::span<const int> vertices) const {
  int s = 0;
  for (int v : vertices) s += entries_[static_cast<std::size_t>(v)];
  return s;
}

std::string MultiIndex::to_string() const { return fmt::format("({})", fmt::join(entries(), ",")); }

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.begin() + a.size_,
                                                b.entries_.begin(), b.entries_.begin() + b.size_);
}

SubSimplex::SubSimplex(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("sub-simplex needs at least one vertex");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] < 0 || (i > 0 && vertices_[i] <= vertices_[i - 1])) {
      throw std::invalid_argument("sub-simplex vertices must be non-negative and strictly increasing");
    }
  }
}

bool SubSimplex::contains(int v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

std::string SubSimplex::to_string() const { return fmt::format("{{{}}}", fmt::join(vertices_, ",")); }

namespace {

// Loops over entries 1..length-1 ascending; entry 0 takes the remainder.
void tuples_rec(std::vector<int>& cur, int pos, int remaining, std::vector<MultiIndex>& out) {
  const int length = static_cast<int>(cur.size());
  if (pos == length) {
    cur[0] = remaining;
    out.emplace_back(std::span<const int>(cur));
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    cur[static_cast<std::size_t>(pos)] = a;
    tuples_rec(cur, pos + 1, remaining - a, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_tuples(int length, int sum) {
  if (length < 0 || length > kMaxDim + 1) {
    throw std::invalid_argument(fmt::format("tuple length {} outside 0..{}", length, kMaxDim + 1));
  }
  std::vector<MultiIndex> out;
  if (sum < 0) return out;
  if (length == 0) {
    if (sum == 0) out.emplace_back();
    return out;
  }
  out.reserve(static_cast<std::size_t>(dim_pk(sum, length - 1)));
  std::vector<int> cur(static_cast<std::size_t>(length), 0);
  tuples_rec(cur, 1, sum, out);
  return out;
}

std::vector<MultiIndex> enumerate_multiindices(int n, int k) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument(fmt::format("dimension n = {} outside 1..{}", n, kMaxDim));
  if (k < 0) throw std::invalid_argument(fmt::format("degree k = {} must be non-negative", k));
  return enumerate_tuples(n + 1, k);
}

std::int64_t tuple_rank(const MultiIndex& alpha) {
  // Tuples preceding alpha: for each loop position j, count the tails that
  // follow a smaller value at j (hockey-stick sum of binomials).
  const int n = alpha.size() - 1;
  std::int64_t rank = 0;
  std::int64_t remaining = alpha.degree();
  for (int j = 1; j <= n; ++j) {
    const std::int64_t p = n - j;
    const std::int64_t a = alpha[j];
    rank += binomial(remaining + p + 1, p + 1) - binomial(remaining - a + p + 1, p + 1);
    remaining -= a;
  }
  return rank;
}

std::vector<SubSimplex> enumerate_subsimplices(int n, int level) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument(fmt::format("dimension n = {} outside 0..{}", n, kMaxDim));
  if (level < 0 || level > n) throw std::invalid_argument(fmt::format("level {} outside 0..{}", level, n));
  std::vector<SubSimplex> out;
  const int count = level + 1;
  std::vector<int> pick(static_cast<std::size_t>(count));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    out.emplace_back(pick);
    int i = count - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - (count - 1 - i)) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < count; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace cmpk
