#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "conehull/lattice_point.hpp"

namespace conehull {

// Inequalities v·n >= 0 within this distance of zero count as satisfied and raise a near-tie flag.
inline constexpr long double kTieTolerance = 1e-12L;

enum class Rationality { Rational, CompletelyIrrational };
std::string_view to_string(Rationality r);  // "R" / "CI"
std::optional<Rationality> parse_rationality(std::string_view text);

using MatrixLD = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct Facet {
  std::vector<std::string> source;  // components as ingested
  std::array<long double, kMaxDimension> value{};
  bool exact = false;
  // Exact facets: value_j == numerator_j / denominator, gcd(numerator, denominator) = 1.
  std::array<std::int64_t, kMaxDimension> numerator{};
  std::int64_t denominator = 1;
  std::int64_t content = 1;  // gcd of the numerators
};

// Accepts decimal notation ("-0.6", "1e-3") or a fraction "p/q".
bool parse_exact_component(const std::string& text, std::int64_t& num, std::int64_t& den);
bool parse_real_component(const std::string& text, long double& value);
std::size_t significant_digits(const std::string& text);
// Continued-fraction smallness heuristic: x close to p/q with q <= max_den.
bool looks_rational(long double x, std::int64_t max_den = 10000, long double tol = 1e-12L);
// 21 significant digits: enough to reproduce any long double.
std::string format_decimal(long double x);

class ConeSpec {
 public:
  ConeSpec(std::size_t D, const std::vector<std::vector<std::string>>& vectors, const std::vector<bool>& exact,
           const std::map<std::string, std::string>& rationality = {});

  std::size_t dimension() const noexcept { return D_; }
  std::size_t facets() const noexcept { return facets_.size(); }
  const Facet& facet(std::size_t k) const { return facets_.at(k); }

  // v_k·n; for exact facets the exact rational value rounded once, so all points
  // of a fibre give bit-identical results.
  long double dot(std::size_t k, const Point& n) const;
  // numerator·n for exact facets (sign-equivalent to v_k·n).
  __int128 scaled_dot(std::size_t k, const Point& n) const;
  // Minimal positive element c_k of v_k·Z^D for exact facets: content / denominator.
  long double period(std::size_t k) const;

  bool all_exact(const IndexSet& I) const;
  bool all_exact() const { return all_exact(IndexSet::all(facets())); }
  std::optional<Rationality> declared_rationality(const IndexSet& I) const;
  // Declared class, or R when every facet in I is exact; otherwise unknown.
  std::optional<Rationality> rationality(const IndexSet& I) const;
  const std::map<std::string, Rationality>& rationality_map() const noexcept { return rationality_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // Facets of I only (same D); declarations carried over for subsets of I.
  ConeSpec restricted(const IndexSet& I) const;

  const MatrixLD& matrix() const noexcept { return A_; }  // d x D
  // ‖P n‖² for P the orthogonal projector onto ker A_v.
  long double transverse_norm2(const Point& n) const;
  const MatrixLD& transverse_projector() const noexcept { return P_perp_; }
  long double min_singular_value() const noexcept { return sigma_min_; }

 private:
  ConeSpec() = default;
  void finish();

  std::size_t D_ = 0;
  std::vector<Facet> facets_;
  std::map<std::string, Rationality> rationality_;
  std::vector<std::string> warnings_;
  MatrixLD A_;
  MatrixLD P_perp_;
  long double sigma_min_ = 0;
};

}  // namespace conehull
