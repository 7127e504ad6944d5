#include <doctest.h>

#include <numeric>
#include <set>

#include "cmpk/functionals.hpp"

using namespace cmpk;

TEST_SUITE("functionals") {

TEST_CASE("Argyris functionals") {
  const auto table = assign_dofs({2, 1, 0});
  const auto fs = realize_functionals(table, Simplex::reference(2));
  REQUIRE(fs.size() == 21);
  int at_origin = 0;
  for (const auto& f : fs) {
    if (f.point.norm() == 0.0) {
      ++at_origin;
      CHECK(f.home.level() == 0);
    }
  }
  CHECK(at_origin == 6);

  // the edge dof of edge {1,2} is a first normal derivative at its midpoint
  int edge_normals = 0;
  for (const auto& f : fs) {
    if (f.home.vertices() == std::vector<int>{1, 2}) {
      ++edge_normals;
      CHECK(f.kind == FunctionalKind::NormalDerivative);
      CHECK(f.order == 1);
      CHECK(f.point(0) == doctest::Approx(0.5));
      CHECK(f.point(1) == doctest::Approx(0.5));
      Vector tangent(2);
      tangent << -1.0, 1.0;
      CHECK(std::abs(f.directions.col(0).dot(tangent)) < 1e-14);
    }
  }
  CHECK(edge_normals == 1);
}

TEST_CASE("vertex partials follow the off-vertex components") {
  const auto table = assign_dofs({2, 1, 0});
  const auto fs = realize_functionals(table, Simplex::reference(2));
  std::set<std::vector<int>> powers;
  for (const auto& f : fs) {
    if (f.home.vertices() == std::vector<int>{0}) {
      if (f.order == 0) {
        CHECK(f.kind == FunctionalKind::Value);
      } else {
        CHECK(f.kind == FunctionalKind::VertexPartial);
        powers.insert(f.powers);
      }
    }
  }
  CHECK(powers == std::set<std::vector<int>>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("off-face pairing") {
  CHECK(off_face_bijection({1, 0}, 1, 2) == std::vector<int>{1, 0});
  CHECK(off_face_bijection({0, 1}, 1, 2) == std::vector<int>{0, 1});
  // bijective onto the q-tuples of degree d
  for (int q = 1; q <= 3; ++q) {
    for (int d = 1; d <= 5; ++d) {
      std::set<std::vector<int>> image;
      const auto tuples = enumerate_tuples(q, d);
      for (const auto& t : tuples) {
        auto v = off_face_bijection({t.entries().begin(), t.entries().end()}, d, q);
        CHECK(std::accumulate(v.begin(), v.end(), 0) == d);
        image.insert(v);
      }
      CHECK(image.size() == tuples.size());
    }
  }
  CHECK_THROWS_AS(off_face_bijection({1, 1}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(off_face_bijection({1}, 1, 2), std::invalid_argument);
}

TEST_CASE("interior members sit at alpha/k") {
  const ElementParams p{2, 1, 2};
  const auto table = assign_dofs(p);
  const auto fs = realize_functionals(table, Simplex::reference(2));
  for (const auto& f : fs) {
    if (f.home.level() != 2) continue;
    const auto& alpha = table.groups[static_cast<std::size_t>(f.group)].members[static_cast<std::size_t>(f.ordinal - 1)];
    CHECK(f.kind == FunctionalKind::Value);
    CHECK(f.point(0) == doctest::Approx(alpha[1] / 7.0));
    CHECK(f.point(1) == doctest::Approx(alpha[2] / 7.0));
  }
}

TEST_CASE("members of edge and face groups never touch their own boundary") {
  for (const ElementParams p : {ElementParams{2, 2, 1}, ElementParams{3, 3, 2}, ElementParams{4, 1, 1}}) {
    CHECK(boundary_placements(assign_dofs(p)).empty());
  }
}

TEST_CASE("functionals are pairwise distinct across the dimension sweep") {
  for (int n = 2; n <= 4; ++n) {
    for (int m = 1; m <= (n == 4 ? 2 : 4); ++m) {
      for (int k1 = 0; k1 <= (n == 4 ? 1 : 2); ++k1) {
        CAPTURE(n); CAPTURE(m); CAPTURE(k1);
        // realize_functionals throws on a duplicate key
        std::vector<NodalFunctional> fs;
        CHECK_NOTHROW(fs = realize_functionals(assign_dofs({n, m, k1}), Simplex::reference(n)));
        CHECK(static_cast<std::int64_t>(fs.size()) == dim_pk(ElementParams{n, m, k1}.k(), n));
      }
    }
  }
}

}
