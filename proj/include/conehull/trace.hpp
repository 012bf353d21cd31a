#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "conehull/operator.hpp"

namespace conehull {

// Where and how a trace per unit hypersurface is taken.
//   cone:  sites with 0 <= v_k·n <= L (k ∈ I) and ‖P_I n‖ <= t, divided by
//          t^{D-|I|}·Vol(B_{D-|I|}).
//   torus: every site, divided by the site count (trace per unit volume).
struct TraceSpec {
  IndexSet I;
  SlabWindow geometry;
  long double normalization = 1;
  long double covolume = 1;                    // covolume_facets(v_I)
  std::optional<long double> kernel_covolume;  // rational case only
  std::optional<long double> image_covolume;   // rational case only
  std::optional<ConeSpec> spec;                // v_I; empty on a torus
  std::optional<Rationality> rationality;

  static TraceSpec cone(const ConeSpec& spec, const IndexSet& I, const SlabWindow& geometry);
  static TraceSpec torus(const SiteWindow& window);
  bool periodic() const { return !spec.has_value(); }
  // Same spec with the transverse radius replaced.
  TraceSpec with_radius(long double t) const;
};

// Site indices of the trace region inside the window, ascending.
std::vector<std::size_t> trace_sites(const SiteWindow& window, const TraceSpec& ts);

// Band-traced diagonal sum over the trace region, normalized; summed in site order.
cplx trace_estimate(const TruncatedOperator& a, const TraceSpec& ts);

struct QuadratureResult {
  long double value = 0;
  long double est_error = 0;
  std::size_t evaluations = 0;
};

// ∫ f dμ_I over the offset box (one [lo, hi] per element of I, clamped to
// x >= 0), normalized so that it equals the large-t limit of trace_estimate of
// the diagonal operator n ↦ f(A_I n):
//   CI: midpoint rule with step <= h, divided by covolume_facets; error from step halving.
//   R:  Σ_{x ∈ A_I(Z^D) ∩ box} f(x) / kernel covolume (exact sum, error 0).
QuadratureResult stratum_integral(const std::function<long double(const std::vector<long double>&)>& f,
                                  const TraceSpec& ts, long double h,
                                  const std::vector<std::pair<long double, long double>>& box);

}  // namespace conehull
