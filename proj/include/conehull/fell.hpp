#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conehull/cone_lattice.hpp"

namespace conehull {

// Tolerance on |v_k·m - x_k| when deciding that an offset is a lattice value.
inline constexpr long double kStrictTolerance = 1e-9L;

struct AnalyticPattern {
  ConeSpec spec;
  IndexSet I;
  IndexSet J;                  // strict facets, J ⊆ I
  std::vector<long double> x;  // length d; entries outside I are unused
};

struct FinitePattern {
  std::size_t D = 0;
  std::vector<Point> points;  // sorted, all with ‖n‖ < radius
  long double radius = 0;
};

class Pattern {
 public:
  static Pattern analytic(ConeSpec spec, IndexSet I, IndexSet J, std::vector<long double> x);
  // Z^D: the analytic pattern with I = ∅.
  static Pattern whole(const ConeSpec& spec);
  static Pattern finite(std::size_t D, std::vector<Point> points, long double radius);

  bool is_analytic() const noexcept { return std::holds_alternative<AnalyticPattern>(rep_); }
  const AnalyticPattern& as_analytic() const { return std::get<AnalyticPattern>(rep_); }
  const FinitePattern& as_finite() const { return std::get<FinitePattern>(rep_); }
  std::size_t dimension() const noexcept;

  // Radius up to which truncations are exact (infinite for analytic patterns).
  long double available_radius() const noexcept;
  bool contains(const Point& n) const;
  // Analytic patterns: the k-th inequality alone (true when k ∉ I).
  bool satisfies_facet(std::size_t k, const Point& n) const;
  // Points with ‖n‖ < r, lexicographically sorted.
  std::vector<Point> truncation(long double r) const;

  const std::vector<std::string>& notes() const noexcept { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

 private:
  explicit Pattern(std::variant<AnalyticPattern, FinitePattern> rep) : rep_(std::move(rep)) {}
  std::variant<AnalyticPattern, FinitePattern> rep_;
  std::vector<std::string> notes_;
};

// L_v - n, truncated to the open ball of the given radius.
Pattern orbit_point(const ConeSpec& spec, const Point& n, long double radius);

struct HullMode {
  bool finite = false;
  long double radius = 0;
  static HullMode analytic() { return {}; }
  static HullMode truncated(long double r) { return {true, r}; }
};

struct HullOptions {
  long double strict_tolerance = kStrictTolerance;
  std::int64_t search_radius = 64;
};

// Some m with |v_k·m - x| <= tolerance, when x != 0. Real facets are searched in
// ‖m‖∞ <= search_radius; exact facets are solved directly (Bezout).
std::optional<Point> lattice_value_witness(const ConeSpec& spec, std::size_t k, long double x,
                                           const HullOptions& options = {});
inline bool is_lattice_value(const ConeSpec& spec, std::size_t k, long double x, const HullOptions& options = {}) {
  return lattice_value_witness(spec, k, x, options).has_value();
}

// p - n = {m : m + n ∈ p}. Finite patterns lose ‖n‖ of their radius.
Pattern translate(const Pattern& p, const Point& n);

// L^J_{v,x}; x has length d (entries outside I ignored).
Pattern hull_point(const ConeSpec& spec, IndexSet I, IndexSet J, std::vector<long double> x, HullMode mode = {},
                   const HullOptions& options = {});

enum class Exactness { Exact, UpperBoundOnly };

struct FellDistance {
  long double value = 1;
  Exactness exactness = Exactness::UpperBoundOnly;
  long double agreement_radius = 0;  // r*
  std::optional<Point> witness;      // first disagreement, if any
};

FellDistance fell_distance(const Pattern& p, const Pattern& q, long double max_radius);

enum class Trend { NonIncreasing, StrictlyIncreasing, Diverging };  // J₊, J₋, J_∞

struct OffsetSequence {
  std::vector<std::vector<long double>> x;       // x(j), each of length d
  std::vector<std::optional<Trend>> tags;        // per component; empty = infer all
  std::vector<std::optional<long double>> limits;  // per component; empty = extrapolate
};

struct CertificateStep {
  std::size_t j = 0;
  FellDistance distance;
};

struct SequenceLimit {
  Pattern pattern;
  IndexSet j_plus, j_minus, j_infinity;
  std::vector<long double> limits;
  std::vector<CertificateStep> certificate;  // one entry per sequence element
};

SequenceLimit sequence_limit(const ConeSpec& spec, const OffsetSequence& sequence, long double max_radius = 20);

}  // namespace conehull
