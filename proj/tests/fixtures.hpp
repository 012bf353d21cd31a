#pragma once

// Cone specs shared by the unit and acceptance tests, plus brute-force
// oracles written independently of the library code paths.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "conehull/cone_spec.hpp"
#include "conehull/lattice_point.hpp"

namespace fixtures {

inline long double golden() { return (1 + std::sqrt(5.0L)) / 2; }

inline std::vector<std::string> unit_strings(std::vector<long double> v) {
  long double n = 0;
  for (auto x : v) n += x * x;
  n = std::sqrt(n);
  std::vector<std::string> out;
  for (auto x : v) out.push_back(conehull::format_decimal(x / n));
  return out;
}

// v ∝ (1, φ), declared CI.
inline conehull::ConeSpec golden_edge() {
  return conehull::ConeSpec(2, {unit_strings({1, golden()})}, {false}, {{"1", "CI"}});
}

// v1 ∝ (1, φ), v2 ∝ (φ, -1): orthonormal, D = d = 2.
inline conehull::ConeSpec golden_quadrant() {
  return conehull::ConeSpec(2, {unit_strings({1, golden()}), unit_strings({golden(), -1})}, {false, false},
                            {{"1", "CI"}, {"2", "CI"}});
}

inline conehull::ConeSpec half_plane() { return conehull::ConeSpec(2, {{"0", "1"}}, {true}); }
inline conehull::ConeSpec tilted_rational() { return conehull::ConeSpec(2, {{"0.6", "0.8"}}, {true}); }
inline conehull::ConeSpec quadrant() { return conehull::ConeSpec(2, {{"1", "0"}, {"0", "1"}}, {true, true}); }

// Brute-force count of 0 <= v·n <= L, |w·n| <= t in D = 2 with plain doubles.
inline std::uint64_t brute_count_2d(double v1, double v2, double L, double t) {
  const double nrm = std::hypot(v1, v2);
  v1 /= nrm;
  v2 /= nrm;
  const auto R = static_cast<std::int64_t>(t + L) + 3;
  std::uint64_t c = 0;
  for (std::int64_t a = -R; a <= R; ++a)
    for (std::int64_t b = -R; b <= R; ++b) {
      const double s = v1 * a + v2 * b, p = v2 * a - v1 * b;
      if (s >= 0 && s <= L && std::fabs(p) <= t) ++c;
    }
  return c;
}

}  // namespace fixtures
