#include "conehull/fell.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "conehull/errors.hpp"

namespace conehull {

Pattern Pattern::analytic(ConeSpec spec, IndexSet I, IndexSet J, std::vector<long double> x) {
  const std::size_t d = spec.facets();
  require(I.subset_of(IndexSet::all(d)), ErrorKind::InvalidArgument, "I exceeds the facet count");
  require(J.subset_of(I), ErrorKind::InvalidArgument, "J must be a subset of I");
  require(x.size() == d, ErrorKind::DimensionMismatch, "offset vector must have one entry per facet");
  for (std::size_t k = 0; k < d; ++k) {
    if (!I.contains(k)) x[k] = 0;
    require(std::isfinite(x[k]), ErrorKind::InvalidArgument, "offsets must be finite");
  }
  return Pattern(AnalyticPattern{std::move(spec), I, J, std::move(x)});
}

Pattern Pattern::whole(const ConeSpec& spec) {
  return analytic(spec, {}, {}, std::vector<long double>(spec.facets(), 0));
}

Pattern Pattern::finite(std::size_t D, std::vector<Point> points, long double radius) {
  require(radius > 0 && std::isfinite(radius), ErrorKind::InvalidArgument, "finite pattern radius must be positive");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const auto& p : points) {
    require(p.size() == D, ErrorKind::DimensionMismatch, "pattern point " + p.to_string() + " has wrong dimension");
    require(static_cast<long double>(p.norm2()) < radius * radius, ErrorKind::InvalidArgument,
            "pattern point " + p.to_string() + " lies outside the truncation radius");
  }
  return Pattern(FinitePattern{D, std::move(points), radius});
}

std::size_t Pattern::dimension() const noexcept {
  return is_analytic() ? as_analytic().spec.dimension() : as_finite().D;
}

long double Pattern::available_radius() const noexcept {
  return is_analytic() ? std::numeric_limits<long double>::infinity() : as_finite().radius;
}

bool Pattern::satisfies_facet(std::size_t k, const Point& n) const {
  const auto& a = as_analytic();
  if (!a.I.contains(k)) return true;
  const long double s = a.spec.dot(k, n) + a.x[k];
  if (std::fabs(s) <= kTieTolerance) return !a.J.contains(k);
  return s > 0;
}

bool Pattern::contains(const Point& n) const {
  require(n.size() == dimension(), ErrorKind::DimensionMismatch, "point " + n.to_string() + " has wrong dimension");
  if (is_analytic()) {
    for (std::size_t k = 0; k < as_analytic().spec.facets(); ++k)
      if (!satisfies_facet(k, n)) return false;
    return true;
  }
  const auto& f = as_finite();
  require(static_cast<long double>(n.norm2()) < f.radius * f.radius, ErrorKind::TruncationExceeded,
          "point " + n.to_string() + " is beyond the pattern's truncation radius");
  return std::binary_search(f.points.begin(), f.points.end(), n);
}

std::vector<Point> Pattern::truncation(long double r) const {
  require(r <= available_radius(), ErrorKind::TruncationExceeded, "requested truncation exceeds the pattern radius");
  std::vector<Point> out;
  if (is_analytic()) {
    for (const auto& n : ball_points(dimension(), r))
      if (contains(n)) out.push_back(n);
    return out;
  }
  for (const auto& n : as_finite().points)
    if (static_cast<long double>(n.norm2()) < r * r) out.push_back(n);
  return out;
}

Pattern orbit_point(const ConeSpec& spec, const Point& n, long double radius) {
  require(cone_membership(n, spec).inside, ErrorKind::NotInSemigroup, n.to_string() + " is not in the cone semigroup");
  std::vector<Point> pts;
  for (const auto& m : ball_points(spec.dimension(), radius))
    if (cone_membership(m + n, spec).inside) pts.push_back(m);
  return Pattern::finite(spec.dimension(), std::move(pts), radius);
}

std::optional<Point> lattice_value_witness(const ConeSpec& spec, std::size_t k, long double x,
                                           const HullOptions& options) {
  if (x == 0) return std::nullopt;
  const long double tol = options.strict_tolerance;
  const std::size_t D = spec.dimension();
  if (spec.facet(k).exact) {
    const long double c = spec.period(k);
    const long double q = std::round(x / c);
    if (q == 0 || std::fabs(q * c - x) > tol) return std::nullopt;
    // numerator·m = content via a running Bezout combination, then scale by q.
    const auto& f = spec.facet(k);
    Point m(D);
    std::int64_t g = 0;
    for (std::size_t j = 0; j < D; ++j) {
      std::int64_t old_r = g, r = f.numerator[j], old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        const std::int64_t qq = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - qq * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - qq * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - qq * t);
      }
      if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
      }
      for (std::size_t i = 0; i < j; ++i) m[i] *= old_s;
      m[j] = old_t;
      g = old_r;
    }
    const auto scale = static_cast<std::int64_t>(q);
    for (std::size_t j = 0; j < D; ++j) m[j] *= scale;
    return m;
  }
  LinearBound b;
  for (std::size_t j = 0; j < D; ++j) b.a[j] = spec.facet(k).value[j];
  b.lo = x - tol;
  b.hi = x + tol;
  std::optional<Point> found;
  scan_box(D, options.search_radius, {b}, std::nullopt, [&](const Point& m) {
    if (std::fabs(spec.dot(k, m) - x) > tol) return;
    if (!found || m.max_abs() < found->max_abs()) found = m;
  });
  return found;
}

Pattern translate(const Pattern& p, const Point& n) {
  require(n.size() == p.dimension(), ErrorKind::DimensionMismatch, "shift has wrong dimension");
  if (p.is_analytic()) {
    const auto& a = p.as_analytic();
    auto x = a.x;
    for (auto k : a.I.elements()) x[k] += a.spec.dot(k, n);
    return Pattern::analytic(a.spec, a.I, a.J, std::move(x));
  }
  const auto& f = p.as_finite();
  const long double r = f.radius - std::sqrt(static_cast<long double>(n.norm2()));
  require(r > 0, ErrorKind::TruncationExceeded, "shift leaves the truncation ball");
  std::vector<Point> pts;
  for (const auto& m : f.points) {
    const Point s = m - n;
    if (static_cast<long double>(s.norm2()) < r * r) pts.push_back(s);
  }
  return Pattern::finite(f.D, std::move(pts), r);
}

Pattern hull_point(const ConeSpec& spec, IndexSet I, IndexSet J, std::vector<long double> x, HullMode mode,
                   const HullOptions& options) {
  require(J.subset_of(I), ErrorKind::InvalidArgument, "J must be a subset of I");
  require(x.size() == spec.facets(), ErrorKind::DimensionMismatch, "offset vector must have one entry per facet");
  std::vector<std::string> notes;
  for (auto k : I.elements()) {
    require(x[k] >= 0, ErrorKind::InvalidArgument, "offset x_" + std::to_string(k + 1) + " is negative");
    if (J.contains(k) && !is_lattice_value(spec, k, x[k], options))
      notes.push_back("facet " + std::to_string(k + 1) +
                      ": offset is not a lattice value, strict/non-strict distinction is vacuous");
  }
  Pattern p = Pattern::analytic(spec, I, J, std::move(x));
  if (mode.finite) p = Pattern::finite(spec.dimension(), p.truncation(mode.radius), mode.radius);
  for (auto& note : notes) p.add_note(std::move(note));
  return p;
}

FellDistance fell_distance(const Pattern& p, const Pattern& q, long double max_radius) {
  require(p.dimension() == q.dimension(), ErrorKind::DimensionMismatch, "patterns live in different dimensions");
  require(max_radius > 0 && std::isfinite(max_radius), ErrorKind::InvalidArgument, "max_radius must be positive");
  const long double avail = std::min(p.available_radius(), q.available_radius());
  require(max_radius <= avail, ErrorKind::TruncationExceeded, "max_radius exceeds an available truncation radius");

  // Truncations only change at lattice-point norms: scan points by increasing norm.
  std::vector<Point> pts = ball_points(p.dimension(), max_radius + 1);
  const long double r2 = max_radius * max_radius;
  std::erase_if(pts, [&](const Point& n) {
    const auto n2 = static_cast<long double>(n.norm2());
    return n2 > r2 || n2 >= avail * avail;
  });
  std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.norm2() < b.norm2(); });

  FellDistance out;
  for (const auto& n : pts) {
    if (p.contains(n) != q.contains(n)) {
      const long double rho = std::sqrt(static_cast<long double>(n.norm2()));
      out.value = 1 / (rho + 1);
      out.exactness = Exactness::Exact;
      out.agreement_radius = rho;
      out.witness = n;
      return out;
    }
  }
  out.value = 1 / (max_radius + 1);
  out.exactness = Exactness::UpperBoundOnly;
  out.agreement_radius = max_radius;
  return out;
}

namespace {

// Aitken Δ² from the last three terms; nullopt unless increments shrink geometrically.
std::optional<long double> aitken_limit(const std::vector<long double>& s) {
  const std::size_t n = s.size();
  if (n < 3) return std::nullopt;
  const long double d1 = s[n - 2] - s[n - 3], d2 = s[n - 1] - s[n - 2];
  if (d1 == 0) return d2 == 0 ? std::optional<long double>(s[n - 1]) : std::nullopt;
  const long double ratio = d2 / d1;
  if (!(ratio > 0 && ratio < 1)) return std::nullopt;
  return s[n - 1] - d2 * d2 / (d2 - d1);
}

}  // namespace

SequenceLimit sequence_limit(const ConeSpec& spec, const OffsetSequence& seq, long double max_radius) {
  const std::size_t d = spec.facets();
  require(!seq.x.empty(), ErrorKind::InvalidArgument, "offset sequence is empty");
  require(seq.tags.empty() || seq.tags.size() == d, ErrorKind::DimensionMismatch, "one tag slot per facet");
  require(seq.limits.empty() || seq.limits.size() == d, ErrorKind::DimensionMismatch, "one limit slot per facet");
  for (const auto& xj : seq.x) {
    require(xj.size() == d, ErrorKind::DimensionMismatch, "each x(j) needs one entry per facet");
    for (auto v : xj) require(std::isfinite(v) && v >= 0, ErrorKind::InvalidArgument, "offsets must be finite and >= 0");
  }

  SequenceLimit out{Pattern::whole(spec), {}, {}, {}, std::vector<long double>(d, 0), {}};
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<long double> s;
    for (const auto& xj : seq.x) s.push_back(xj[k]);
    bool non_increasing = true, strictly_increasing = true, non_decreasing = true;
    for (std::size_t j = 1; j < s.size(); ++j) {
      non_increasing &= s[j] <= s[j - 1];
      strictly_increasing &= s[j] > s[j - 1];
      non_decreasing &= s[j] >= s[j - 1];
    }
    const std::optional<long double> given = seq.limits.empty() ? std::nullopt : seq.limits[k];
    const std::string label = "component " + std::to_string(k + 1);
    Trend tag = Trend::NonIncreasing;
    if (!seq.tags.empty() && seq.tags[k].has_value()) {
      tag = seq.tags[k].value();
    } else if (non_increasing) {
      tag = Trend::NonIncreasing;
    } else if (strictly_increasing) {
      tag = (given && std::isfinite(*given)) || aitken_limit(s) ? Trend::StrictlyIncreasing : Trend::Diverging;
    } else {
      fail(ErrorKind::InvalidArgument, label + " is non-monotone and has no tag");
    }
    switch (tag) {
      case Trend::NonIncreasing: {
        require(non_increasing, ErrorKind::InvalidArgument, "inconsistent tags: " + label + " is not non-increasing");
        const long double lim = given ? *given : aitken_limit(s).value_or(s.back());
        require(lim <= s.back() && lim >= 0, ErrorKind::InvalidArgument,
                "inconsistent tags: " + label + " limit must lie in [0, last term]");
        out.j_plus.insert(k);
        out.limits[k] = lim;
        break;
      }
      case Trend::StrictlyIncreasing: {
        require(strictly_increasing, ErrorKind::InvalidArgument,
                "inconsistent tags: " + label + " is not strictly increasing");
        const auto lim = given ? given : aitken_limit(s);
        require(lim.has_value() && std::isfinite(*lim), ErrorKind::InvalidArgument,
                label + ": no finite limit supplied and none can be extrapolated");
        require(*lim > s.back(), ErrorKind::InvalidArgument,
                "inconsistent tags: " + label + " limit must exceed every term");
        out.j_minus.insert(k);
        out.limits[k] = *lim;
        break;
      }
      case Trend::Diverging:
        require(non_decreasing, ErrorKind::InvalidArgument, "inconsistent tags: " + label + " is not increasing");
        out.j_infinity.insert(k);
        break;
    }
  }
  out.pattern = Pattern::analytic(spec, out.j_plus | out.j_minus, out.j_minus, out.limits);
  for (std::size_t j = 0; j < seq.x.size(); ++j) {
    const Pattern at_j = Pattern::analytic(spec, IndexSet::all(d), {}, seq.x[j]);
    out.certificate.push_back({j, fell_distance(at_j, out.pattern, max_radius)});
  }
  return out;
}

}  // namespace conehull
