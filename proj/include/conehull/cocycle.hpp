#pragma once

#include <string>
#include <vector>

#include "conehull/trace.hpp"

namespace conehull {

using Direction = std::vector<double>;

// Σ_{ρ ∈ S_m} sgn(ρ)·T(f₀ ∇_{w_ρ(1)} f₁ ⋯ ∇_{w_ρ(m)} f_m), m = directions.size() <= 3.
// Only the trace rows are formed; f_m must be known on the trace columns.
cplx chern_cocycle(const std::vector<TruncatedOperator>& fs, const std::vector<Direction>& directions,
                   const TraceSpec& ts);

struct LadderEntry {
  long double t = 0;
  cplx value;
};

struct PairingResult {
  cplx value;
  std::size_t m = 0;
  std::vector<Direction> directions;
  SlabWindow truncation;
  double est_error = 0;
  std::string convention_note;
  double defect = 0;        // ‖p² - p‖∞ (even) or ‖u†u - 1‖∞ on the evaluated columns (odd)
  double localization = 0;  // odd: largest |(u - 1)e_n| over core columns n within one unit of the depth cut
  double leakage = 0;       // odd: largest |(u - 1)_{mn}| with m outside the core (recorded only)
  std::vector<LadderEntry> ladder;
};

// Normalizations with ∇_w = i[w·𝔫, ·] on Z^D: the Brillouin zone has period 2π,
// so each derivation contributes a factor 2π relative to the unit-period torus.
//   even, m = 2: value = (2π)²·Ch(p, p, p) / (−2πi)
//   odd,  m = 1: value = (2π)·(−i/2π)·Ch(u* − 1, u − 1) = −i·Ch(u* − 1, u − 1)
extern const char* const kPairingConvention;

PairingResult pair_even(const TruncatedOperator& p, const std::vector<Direction>& directions, const TraceSpec& ts,
                        double projection_tolerance = 1e-8);

struct OddPairingOptions {
  double unitarity_tolerance = 1e-8;
  double localization_tolerance = 1e-6;
  std::size_t column_chunk = 256;
};

// est_error = |value(t) - value(t/2)| over the nested cores.
PairingResult pair_odd(const TruncatedOperator& u, const Direction& direction, const TraceSpec& ts,
                       const OddPairingOptions& options = {});

}  // namespace conehull
