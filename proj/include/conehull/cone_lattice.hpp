#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "conehull/cone_spec.hpp"
#include "conehull/lattice_point.hpp"

namespace conehull {

struct SlabWindow {
  long double L = 1;            // slab depth per facet
  long double t = 1;            // transverse window radius
  long double core_margin = 15; // buffer between operator window and trace core

  void validate() const;
};

struct Membership {
  bool inside = false;
  bool near_tie = false;
  explicit operator bool() const noexcept { return inside; }
};

Membership cone_membership(const Point& n, const ConeSpec& spec);

// Closed interval lo <= v_k·n <= hi.
struct Bound {
  long double lo = -std::numeric_limits<long double>::infinity();
  long double hi = std::numeric_limits<long double>::infinity();
};

struct Region {
  std::vector<std::optional<Bound>> slab;   // per facet; empty entries are unconstrained
  std::optional<long double> window_radius; // ‖P n‖ <= radius, P onto ker A_v
  bool cone = true;                         // additionally v_k·n >= 0 for all k

  // 0 <= v_k·n <= L for every k and ‖P n‖ <= t.
  static Region slab_window(const ConeSpec& spec, long double L, long double t);
};

bool region_contains(const ConeSpec& spec, const Region& region, const Point& n);

// Exactly the points of the region, lexicographically sorted.
std::vector<Point> enumerate_region(const ConeSpec& spec, const Region& region);
std::uint64_t count_region(const ConeSpec& spec, const Region& region);

// sqrt(det(A_v A_vᵀ)) = Vol(E_◁ / ⟨v_1..v_d⟩).
long double covolume_facets(const ConeSpec& spec);

struct KernelLattice {
  std::vector<Point> basis;  // spans ker(A_v) ∩ Z^D
  long double covolume = 1;  // Vol(E_▽ / V_0); 1 for the rank-0 lattice
};

KernelLattice kernel_covolume(const ConeSpec& spec);

// Covolume of the image lattice A_v(Z^D) ⊂ R^d (exact-rational facets only).
long double image_covolume(const ConeSpec& spec);

struct CountRow {
  long double t = 0;
  std::uint64_t count = 0;
  long double predicted = 0;
  long double relative_error = 0;
};

std::vector<CountRow> count_scaling_study(const ConeSpec& spec, long double L,
                                          const std::vector<long double>& t_values);

// Some n with ‖n‖∞ <= search_radius and eps > v_k·n > 0 (k != i), v_i·n > M;
// the smallest such n in (‖·‖∞, lexicographic) order. i is 0-based.
std::optional<Point> find_escape_vector(const ConeSpec& spec, std::size_t i, long double M, long double eps,
                                        std::int64_t search_radius);

long double unit_ball_volume(std::size_t k);

// Candidate generator shared by the enumerators: visits, in lexicographic
// order, a superset of the integer points in [-box, box]^D satisfying all
// linear bounds and the optional quadratic bound nᵀQn <= r2. Callers replay
// their exact predicate on every candidate.
struct LinearBound {
  std::array<long double, kMaxDimension> a{};
  long double lo = -std::numeric_limits<long double>::infinity();
  long double hi = std::numeric_limits<long double>::infinity();
};

struct QuadraticBound {
  MatrixLD Q;  // symmetric positive semidefinite, D x D
  long double r2 = 0;
};

void scan_box(std::size_t D, std::int64_t box, const std::vector<LinearBound>& linear,
              const std::optional<QuadraticBound>& quadratic, const std::function<void(const Point&)>& visit);

// Integer points with ‖n‖ < r (open ball), lexicographically sorted.
std::vector<Point> ball_points(std::size_t D, long double r);

}  // namespace conehull
