#include "doctest.h"

#include <algorithm>
#include <vector>

#include "conehull/errors.hpp"
#include "conehull/lattice_point.hpp"

using namespace conehull;

TEST_CASE("point arithmetic and order") {
  Point a{1, -2}, b{0, 5};
  CHECK((a + b) == Point{1, 3});
  CHECK((a - b) == Point{1, -7});
  CHECK(-a == Point{-1, 2});
  CHECK(a.norm2() == 5);
  CHECK(b.max_abs() == 5);
  CHECK(b < a);
  std::vector<Point> pts{{1, 0}, {0, 1}, {0, -1}, {-1, 3}};
  std::sort(pts.begin(), pts.end());
  CHECK(pts.front() == Point{-1, 3});
  CHECK(pts.back() == Point{1, 0});
  CHECK(Point{2, 3}.to_string() == "(2,3)");
  CHECK_THROWS_AS(Point(std::size_t{5}), Error);
}

TEST_CASE("index set keys") {
  IndexSet s{0, 2};
  CHECK(s.key() == "1,3");
  CHECK(s.size() == 2);
  IndexSet parsed;
  CHECK(IndexSet::parse_key("1,3", 3, parsed));
  CHECK(parsed == s);
  CHECK_FALSE(IndexSet::parse_key("3,1", 3, parsed));
  CHECK_FALSE(IndexSet::parse_key("1,1", 3, parsed));
  CHECK_FALSE(IndexSet::parse_key("4", 3, parsed));
  CHECK_FALSE(IndexSet::parse_key("1,,2", 3, parsed));
  CHECK(IndexSet::parse_key("", 3, parsed));
  CHECK(parsed.empty());
  CHECK(IndexSet{1}.subset_of(s) == false);
  CHECK(IndexSet{2}.subset_of(s));
}
