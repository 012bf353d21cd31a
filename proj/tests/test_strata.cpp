#include "doctest.h"

#include <cmath>
#include <random>

#include "conehull/errors.hpp"
#include "conehull/strata.hpp"
#include "fixtures.hpp"

using namespace conehull;

TEST_CASE("gamma examples") {
  const auto golden = fixtures::golden_quadrant();
  const auto p = hull_point(golden, IndexSet{0, 1}, {}, {0.25L, 1.5L});
  const auto g = gamma(p, IndexSet{0, 1}, golden);
  CHECK(g.x[0] == 0.25L);
  CHECK(g.x[1] == 1.5L);
  CHECK(g.x_error == 0);

  const auto half = fixtures::half_plane();
  const auto orbit = orbit_point(half, {0, 3}, 10);
  const auto go = gamma(orbit, IndexSet{0}, half);
  CHECK(go.x[0] == 3);
  CHECK(go.x_error == 0);

  const auto edge = hull_point(golden, IndexSet{1}, {}, {0, 2});
  CHECK_THROWS_AS(gamma(edge, IndexSet{0}, golden), Error);
  try {
    gamma(edge, IndexSet{0}, golden);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EscapedDirection);
  }
}

TEST_CASE("gamma equivariance on analytic patterns") {
  const auto spec = fixtures::golden_quadrant();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> coord(-40, 40);
  std::uniform_real_distribution<double> off(0, 5);
  int tested = 0;
  while (tested < 100) {
    const Point n{coord(rng), coord(rng)};
    if (!cone_membership(n, spec).inside) continue;
    const std::vector<long double> x{off(rng), off(rng)};
    const auto p = hull_point(spec, IndexSet{0, 1}, {}, x);
    const auto before = gamma(p, IndexSet{0, 1}, spec);
    const auto after = gamma(translate(p, n), IndexSet{0, 1}, spec);
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::fabs(after.x[k] - (before.x[k] + spec.dot(k, n))) <= 1e-12L);
    ++tested;
  }
}

TEST_CASE("classify examples") {
  const auto golden = fixtures::golden_edge();
  const auto whole = classify(Pattern::whole(golden), golden);
  CHECK(whole.I.size() == 0);
  CHECK(whole.codimension == 0);
  CHECK(filtration_level(whole) == 0);

  const auto half = fixtures::half_plane();
  const auto label = classify(orbit_point(half, {5, 2}, 20), half);
  CHECK(label.I == IndexSet{0});
  CHECK(label.J.size() == 0);
  CHECK(label.x[0] == 2);
  CHECK(label.x_error == 0);
  CHECK(label.escaped.size() == 0);

  // Deep point: its boundary lies beyond half the truncation radius.
  const auto deep = find_escape_vector(fixtures::golden_quadrant(), 0, 30, 0.5L, 400);
  REQUIRE(deep.has_value());
  const auto quad = fixtures::golden_quadrant();
  const auto escaped = classify(orbit_point(quad, *deep, 20), quad);
  CHECK(escaped.I == IndexSet{1});
  CHECK(escaped.escaped == IndexSet{0});
  // A finite truncation only sees the nearest fibre values, so x̂ undershoots.
  CHECK(escaped.x[1] <= quad.dot(1, *deep) + 1e-15L);
  CHECK(escaped.x[1] > quad.dot(1, *deep) - 0.25L);
  CHECK(filtration_level(escaped) == 1);

  // Sequence of escape vectors: once v·n(j) passes threshold·r, d=1 collapses to I=∅.
  bool collapsed = false;
  for (long double M : {2.0L, 5.0L, 12.0L, 25.0L}) {
    const auto n = find_escape_vector(fixtures::golden_quadrant(), 0, M, 0.5L, 400);
    REQUIRE(n.has_value());
    const auto lab = classify(orbit_point(golden, *n, 20), golden);
    const long double x = golden.dot(0, *n);
    if (x > 10 + 1) {
      CHECK(lab.I.size() == 0);
      collapsed = true;
    }
    if (x < 10 - 1) CHECK(lab.I == IndexSet{0});
  }
  CHECK(collapsed);
}

TEST_CASE("classify strict sets") {
  const auto golden = fixtures::golden_edge();
  const long double x = golden.dot(0, {1, 0});
  const auto strict = classify(hull_point(golden, IndexSet{0}, IndexSet{0}, {x}), golden);
  CHECK(strict.J == IndexSet{0});
  CHECK(strict.notes.empty());

  const auto vacuous = classify(hull_point(golden, IndexSet{0}, IndexSet{0}, {0.123456789L}), golden);
  CHECK(vacuous.J.size() == 0);
  CHECK(vacuous.notes.size() == 1);

  // Rational facet: a strict bound at a lattice value is the non-strict one below it.
  const auto tilted = fixtures::tilted_rational();
  const auto rational = classify(hull_point(tilted, IndexSet{0}, IndexSet{0}, {1.0L}), tilted);
  CHECK(rational.J.size() == 0);
  CHECK(std::fabs(rational.x[0] - 0.8L) <= 1e-18L);
  const auto between = classify(hull_point(tilted, IndexSet{0}, {}, {0.5L}), tilted);
  CHECK(std::fabs(between.x[0] - 0.4L) <= 1e-18L);
}

TEST_CASE("rational exhaustiveness") {
  for (const auto& spec : {fixtures::half_plane(), fixtures::tilted_rational()}) {
    const long double c = spec.period(0);
    for (std::int64_t a = -50; a <= 50; ++a)
      for (std::int64_t b = -50; b <= 50; ++b) {
        const Point n{a, b};
        if (!cone_membership(n, spec).inside) continue;
        const long double x = spec.dot(0, n);
        const auto label = classify(orbit_point(spec, n, 2 * x + 6), spec);
        REQUIRE(label.I == IndexSet{0});
        CHECK(label.x[0] == x);
        CHECK(label.x_error == 0);
        const long double q = label.x[0] / c;
        CHECK(std::fabs(q - std::round(q)) <= 1e-12L);
      }
  }
}

TEST_CASE("round trip over strata") {
  const auto spec = fixtures::golden_quadrant();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> mask(0, 3), coin(0, 1);
  std::uniform_int_distribution<std::int64_t> coord(-15, 15);
  std::uniform_real_distribution<double> off(0, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const IndexSet I = IndexSet::from_mask(static_cast<std::uint32_t>(mask(rng)));
    IndexSet J;
    std::vector<long double> x(2, 0);
    for (auto k : I.elements()) {
      if (coin(rng)) {
        // Offset at a lattice value, so strictness is meaningful.
        Point m{coord(rng), coord(rng)};
        while (spec.dot(k, m) > 0) m = Point{coord(rng), coord(rng)};
        x[k] = -spec.dot(k, m);
        if (coin(rng)) J.insert(k);
      } else {
        x[k] = off(rng);
      }
    }
    const auto label = classify(hull_point(spec, I, J, x), spec);
    REQUIRE(label.I == I);
    CHECK(label.J == J);
    CHECK(label.codimension == I.size());
    for (auto k : I.elements()) CHECK(label.x[k] == x[k]);
    const auto again = classify(reconstruct(label, spec), spec);
    CHECK(again.I == label.I);
    CHECK(again.J == label.J);
    CHECK(again.x == label.x);
  }
}

TEST_CASE("filtration levels") {
  StratumLabel label;
  CHECK(filtration_level(label) == 0);
  label.I = IndexSet{0, 1};
  CHECK(filtration_level(label) == 2);
  const ConeSpec three(3, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}, {true, true, true});
  const auto full = classify(hull_point(three, IndexSet{0, 1, 2}, {}, {0, 1, 2}), three);
  CHECK(filtration_level(full) == 3);
}
