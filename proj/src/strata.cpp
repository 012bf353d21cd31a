#include "conehull/strata.hpp"

#include <algorithm>
#include <cmath>

#include "conehull/errors.hpp"

namespace conehull {

namespace {

// Offset read off an analytic pattern. Rational facets are canonicalised to the
// non-strict form: v_k·n takes values in c_k·Z, so the infimum is attained.
long double analytic_offset(const AnalyticPattern& a, std::size_t k) {
  const long double x = a.x[k];
  const Facet& f = a.spec.facet(k);
  if (!f.exact) return x;
  const long double c = a.spec.period(k);
  long double q = x / c;
  const long double nearest = std::round(q);
  const bool on_lattice = std::fabs(nearest - q) * c <= kTieTolerance;
  long double j = on_lattice ? nearest : std::floor(q);
  if (on_lattice && a.J.contains(k)) j -= 1;
  const auto ji = static_cast<std::int64_t>(j);
  return static_cast<long double>(static_cast<__int128>(ji) * f.content) / static_cast<long double>(f.denominator);
}

struct FiniteEstimate {
  long double x = 0;
  long double x_half = 0;
  bool empty = true;
};

FiniteEstimate finite_estimate(const FinitePattern& f, const ConeSpec& spec, std::size_t k) {
  FiniteEstimate e;
  long double lo = 0, lo_half = 0;
  bool any_half = false;
  const long double half2 = f.radius * f.radius / 4;
  for (const auto& n : f.points) {
    const long double s = spec.dot(k, n);
    if (e.empty || s < lo) lo = s;
    e.empty = false;
    if (static_cast<long double>(n.norm2()) < half2 && (!any_half || s < lo_half)) {
      lo_half = s;
      any_half = true;
    }
  }
  e.x = std::max(0.0L, -lo);
  e.x_half = any_half ? std::max(0.0L, -lo_half) : 0.0L;
  return e;
}

void check_compatible(const Pattern& p, const ConeSpec& spec) {
  require(p.dimension() == spec.dimension(), ErrorKind::DimensionMismatch, "pattern and spec dimensions differ");
  if (p.is_analytic())
    require(p.as_analytic().spec.facets() == spec.facets(), ErrorKind::DimensionMismatch,
            "pattern and spec facet counts differ");
}

}  // namespace

GammaValue gamma(const Pattern& p, const IndexSet& I, const ConeSpec& spec, const ClassifyOptions& options) {
  check_compatible(p, spec);
  require(I.subset_of(IndexSet::all(spec.facets())), ErrorKind::InvalidArgument, "I exceeds the facet count");
  GammaValue out{std::vector<long double>(spec.facets(), 0), 0};
  if (p.is_analytic()) {
    const auto& a = p.as_analytic();
    for (auto k : I.elements()) {
      require(a.I.contains(k), ErrorKind::EscapedDirection,
              "facet " + std::to_string(k + 1) + " is unconstrained: the infimum diverges");
      out.x[k] = std::max(0.0L, analytic_offset(a, k));
    }
    return out;
  }
  const auto& f = p.as_finite();
  for (auto k : I.elements()) {
    const auto e = finite_estimate(f, spec, k);
    require(!e.empty && e.x <= options.escape_threshold * f.radius, ErrorKind::EscapedDirection,
            "facet " + std::to_string(k + 1) + " has escaped the truncation");
    out.x[k] = e.x;
    out.x_error = std::max(out.x_error, e.x - e.x_half);
  }
  return out;
}

StratumLabel classify(const Pattern& p, const ConeSpec& spec, const ClassifyOptions& options) {
  check_compatible(p, spec);
  const std::size_t d = spec.facets();
  const long double scale = std::min(options.radius, p.available_radius());
  const long double cutoff = options.escape_threshold * scale;
  StratumLabel label;
  label.x.assign(d, 0);

  if (p.is_analytic()) {
    const auto& a = p.as_analytic();
    for (std::size_t k = 0; k < d; ++k) {
      const std::string facet = "facet " + std::to_string(k + 1);
      if (!a.I.contains(k)) {
        label.escaped.insert(k);
        continue;
      }
      const long double xk = std::max(0.0L, analytic_offset(a, k));
      if (xk > cutoff) {
        label.escaped.insert(k);
        continue;
      }
      label.I.insert(k);
      label.x[k] = xk;
      if (!a.J.contains(k)) continue;
      if (spec.facet(k).exact) {
        label.notes.push_back(facet + ": rational facet, strict bound rewritten in non-strict form");
      } else if (is_lattice_value(spec, k, xk, options.hull)) {
        label.J.insert(k);
      } else {
        label.notes.push_back(facet + ": offset is not a lattice value, strict/non-strict distinction is vacuous");
      }
    }
  } else {
    // The minimiser realising x̂ belongs to the truncation, so the boundary
    // point is never absent and J stays empty for finite data.
    const auto& f = p.as_finite();
    for (std::size_t k = 0; k < d; ++k) {
      const auto e = finite_estimate(f, spec, k);
      if (e.empty) {
        label.notes.push_back("empty truncation");
        label.escaped.insert(k);
        continue;
      }
      if (e.x > cutoff) {
        label.escaped.insert(k);
        continue;
      }
      label.I.insert(k);
      label.x[k] = e.x;
      label.x_error = std::max(label.x_error, e.x - e.x_half);
    }
    if (label.x_error > 0) label.notes.push_back("x_error is an empirical half-radius decrement, not a bound");
  }
  label.codimension = label.I.size();
  return label;
}

std::size_t filtration_level(const StratumLabel& label) { return label.I.size(); }

Pattern reconstruct(const StratumLabel& label, const ConeSpec& spec) {
  return hull_point(spec, label.I, label.J, label.x);
}

}  // namespace conehull
