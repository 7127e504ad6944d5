#include "cmpk/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace cmpk {

const char* to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::Value:
      return "value";
    case FunctionalKind::VertexPartial:
      return "vertex-partial";
    case FunctionalKind::NormalDerivative:
      return "normal-derivative";
  }
  return "?";
}

FunctionalKey functional_key(const NodalFunctional& f) {
  FunctionalKey key;
  for (Eigen::Index i = 0; i < f.point.size(); ++i) {
    key.point.push_back(static_cast<std::int64_t>(std::llround(f.point(i) * 1e9)));
  }
  key.kind = f.kind;
  key.powers = f.powers;
  key.home_key = f.home_key;
  return key;
}

std::vector<int> off_face_bijection(const std::vector<int>& off_components, int d, int q) {
  if (static_cast<int>(off_components.size()) != q) {
    throw std::invalid_argument(fmt::format("expected {} off components, got {}", q, off_components.size()));
  }
  if (std::any_of(off_components.begin(), off_components.end(), [](int c) { return c < 0; })) {
    throw std::invalid_argument("off components must be non-negative");
  }
  const int sum = std::accumulate(off_components.begin(), off_components.end(), 0);
  if (sum != d) throw std::invalid_argument(fmt::format("off components sum to {}, expected {}", sum, d));
  // Both sides enumerate the same lattice of q-tuples summing to d, so the
  // rank-preserving pairing is the identity on tuples.
  return off_components;
}

namespace {

struct Split {
  std::vector<int> on;   // components on the sub-simplex, in its vertex order
  std::vector<int> off;  // remaining components, ascending vertex order
};

Split split(const MultiIndex& alpha, const SubSimplex& f) {
  Split s;
  for (int i = 0; i < alpha.size(); ++i) {
    (f.contains(i) ? s.on : s.off).push_back(alpha[i]);
  }
  return s;
}

}  // namespace

std::vector<NodalFunctional> realize_functionals(const DofTable& table, const Simplex& simplex) {
  const int n = table.params.n;
  const int k = table.params.k();
  if (simplex.dim() != n) {
    throw std::invalid_argument(fmt::format("table is {}-dimensional, simplex {}-dimensional", n, simplex.dim()));
  }

  std::vector<NodalFunctional> out;
  out.reserve(table.indices.size());
  std::map<std::vector<int>, NormalFrame> frames;

  for (std::size_t g = 0; g < table.groups.size(); ++g) {
    const DofGroup& group = table.groups[g];
    const SubSimplex& home = group.subsimplex;
    const int level = group.level();
    const int d = group.order;
    const auto key = simplex.global_key(home);

    const NormalFrame* frame = nullptr;
    if (level > 0 && level < n && d > 0) {
      auto it = frames.find(key);
      if (it == frames.end()) it = frames.emplace(key, normal_frame(simplex.sorted_vertex_coords(home))).first;
      frame = &it->second;
    }

    for (std::size_t r = 0; r < group.members.size(); ++r) {
      const MultiIndex& alpha = group.members[r];
      NodalFunctional f;
      f.home = home;
      f.home_key = key;
      f.group = static_cast<int>(g);
      f.ordinal = static_cast<int>(r) + 1;
      f.order = d;

      const Split parts = split(alpha, home);
      Vector lambda = Vector::Zero(n + 1);
      for (std::size_t j = 0; j < home.vertices().size(); ++j) {
        lambda(home.vertices()[j]) = static_cast<double>(parts.on[j]) / static_cast<double>(k - d);
      }
      f.point = simplex.point(lambda);

      if (d == 0) {
        f.kind = FunctionalKind::Value;
        f.directions = Matrix(n, 0);
      } else if (level == 0) {
        // Off-vertex components in ascending vertex order are the Cartesian
        // multi-index: lexicographic pairing of members with partials.
        f.kind = FunctionalKind::VertexPartial;
        f.powers = parts.off;
        f.directions = Matrix::Identity(n, n);
      } else {
        f.kind = FunctionalKind::NormalDerivative;
        f.powers = off_face_bijection(parts.off, d, n - level);
        f.directions = frame->normal;
      }
      out.push_back(std::move(f));
    }
  }

  std::map<FunctionalKey, std::size_t> seen;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [it, inserted] = seen.emplace(functional_key(out[i]), i);
    if (!inserted) {
      throw std::runtime_error(fmt::format("functionals {} and {} coincide ({} at home {})", it->second, i,
                                           to_string(out[i].kind), out[i].home.to_string()));
    }
  }
  return out;
}

std::vector<std::string> boundary_placements(const DofTable& table) {
  std::vector<std::string> found;
  for (const auto& group : table.groups) {
    if (group.level() == 0 || group.level() == table.params.n) continue;
    for (const auto& alpha : group.members) {
      for (int v : group.subsimplex.vertices()) {
        if (alpha[v] == 0) {
          found.push_back(fmt::format("{} in group {} order {}", alpha.to_string(), group.subsimplex.to_string(),
                                      group.order));
          break;
        }
      }
    }
  }
  return found;
}

}  // namespace cmpk
