#include <doctest.h>

#include <stdexcept>

#include "cmpk/verify.hpp"

using namespace cmpk;

TEST_SUITE("verify") {

TEST_CASE("unisolvency of small elements") {
  for (const ElementParams p : {ElementParams{2, 1, 0}, ElementParams{2, 2, 0}, ElementParams{2, 1, 2}, ElementParams{3, 1, 0}}) {
    CAPTURE(p.n); CAPTURE(p.m); CAPTURE(p.k1);
    const auto r = check_unisolvency(p, Simplex::reference(p.n));
    CHECK(r.pass);
    CHECK(r.size == dim_pk(p.k(), p.n));
    CHECK(r.residual < 1e-8);
  }
}

TEST_CASE("unisolvency on a general cell") {
  Matrix v(2, 3);
  v << 0.2, 1.7, 0.4,
       -0.1, 0.3, 1.2;
  CHECK(check_unisolvency({2, 1, 1}, Simplex(v)).pass);
}

TEST_CASE("interpolation reproduces polynomials") {
  const auto element = assemble_element({2, 1, 0}, Simplex::reference(2));
  const auto r = interpolation_reproduction(element, 42);
  CHECK(r.pass);
  CHECK(r.probes == 10);
  CHECK(r.max_error <= r.tolerance);

  auto broken = element;
  broken.dual.coeffs(3, 4) += 1e-3;
  CHECK_FALSE(interpolation_reproduction(broken, 42).pass);
}

TEST_CASE("facet samples stay inside the facet") {
  std::vector<Vector> tri(3, Vector::Zero(3));
  tri[1](0) = 1.0;
  tri[2](1) = 1.0;
  const auto pts = facet_samples(tri, 40, 0.05);
  CHECK(pts.size() == 40);
  for (const auto& p : pts) {
    CHECK(p(2) == 0.0);
    CHECK(p(0) >= 0.05 - 1e-15);
    CHECK(p(1) >= 0.05 - 1e-15);
    CHECK(1.0 - p(0) - p(1) >= 0.05 - 1e-15);
  }
}

TEST_CASE("cell pairs must share a facet") {
  const auto pair = CellPair::standard(3);
  CHECK(pair.shared.size() == 3);
  Matrix far = Matrix::Identity(2, 3) * 5.0;
  far(0, 0) = 9.0;
  CHECK_THROWS_AS(CellPair(Simplex::reference(2), Simplex(far, {7, 8, 9})), std::invalid_argument);
}

TEST_CASE("zero coefficients give zero jumps") {
  JumpOptions options;
  options.zero_coefficients = true;
  const auto r = continuity_jump_test({2, 1, 0}, CellPair::standard(2), 1, options);
  REQUIRE(r.orders.size() == 3);
  for (const auto& o : r.orders) CHECK(o.max_jump == 0.0);
  CHECK(r.pass());
}

TEST_CASE("two-cell continuity") {
  for (const ElementParams p : {ElementParams{2, 1, 0}, ElementParams{2, 2, 0}, ElementParams{2, 1, 1}, ElementParams{3, 1, 0}}) {
    CAPTURE(p.n); CAPTURE(p.m); CAPTURE(p.k1);
    const auto r = continuity_jump_test(p, CellPair::standard(p.n), 1);
    CHECK(r.pass());
    REQUIRE(r.orders.size() == static_cast<std::size_t>(p.m) + 2);
    // the next order is not matched
    CHECK(r.power() > 1e-3);
  }
}

TEST_CASE("oracle sweep") {
  const auto r = oracle_sweep(3, 3, 1);
  CHECK(r.ok());
  CHECK(r.first_failure() == nullptr);
  CHECK(r.cases.size() == 2 * 3 * 2);
}

}
