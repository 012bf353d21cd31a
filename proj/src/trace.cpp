#include "conehull/trace.hpp"

#include <algorithm>
#include <cmath>

#include "conehull/errors.hpp"
#include "conehull/integer_lattice.hpp"

namespace conehull {

TraceSpec TraceSpec::cone(const ConeSpec& spec, const IndexSet& I, const SlabWindow& geometry) {
  geometry.validate();
  require(!I.empty() && I.subset_of(IndexSet::all(spec.facets())), ErrorKind::InvalidArgument,
          "trace index set must be a non-empty subset of the facets");
  TraceSpec ts;
  ts.I = I;
  ts.geometry = geometry;
  ts.spec = spec.restricted(I);
  const std::size_t co = spec.dimension() - I.size();
  ts.normalization = std::pow(geometry.t, static_cast<long double>(co)) * unit_ball_volume(co);
  ts.covolume = conehull::covolume_facets(*ts.spec);
  ts.rationality = ts.spec->rationality(IndexSet::all(I.size()));
  if (ts.rationality == Rationality::Rational && ts.spec->all_exact()) {
    ts.kernel_covolume = conehull::kernel_covolume(*ts.spec).covolume;
    ts.image_covolume = conehull::image_covolume(*ts.spec);
  }
  return ts;
}

TraceSpec TraceSpec::torus(const SiteWindow& window) {
  require(window.periodic(), ErrorKind::WindowMismatch, "torus trace needs a periodic window");
  TraceSpec ts;
  ts.normalization = static_cast<long double>(window.size());
  return ts;
}

TraceSpec TraceSpec::with_radius(long double t) const {
  require(!periodic(), ErrorKind::InvalidArgument, "a torus trace has no radius");
  TraceSpec out = *this;
  out.geometry.t = t;
  out.geometry.validate();
  const std::size_t co = spec->dimension() - I.size();
  out.normalization = std::pow(t, static_cast<long double>(co)) * unit_ball_volume(co);
  return out;
}

std::vector<std::size_t> trace_sites(const SiteWindow& window, const TraceSpec& ts) {
  std::vector<std::size_t> out;
  if (ts.periodic()) {
    require(window.periodic() && static_cast<long double>(window.size()) == ts.normalization,
            ErrorKind::WindowMismatch, "torus trace spec does not belong to this window");
    out.resize(window.size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = s;
    return out;
  }
  require(!window.periodic() && window.dimension() == ts.spec->dimension(), ErrorKind::WindowMismatch,
          "cone trace needs a non-periodic window of the same dimension");
  const auto region = enumerate_region(*ts.spec, Region::slab_window(*ts.spec, ts.geometry.L, ts.geometry.t));
  out.reserve(region.size());
  for (const auto& n : region) {
    const auto s = window.index_of(n);
    require(s.has_value(), ErrorKind::WindowMismatch, "trace core exceeds the window at " + n.to_string());
    out.push_back(*s);
  }
  return out;
}

cplx trace_estimate(const TruncatedOperator& a, const TraceSpec& ts) {
  const auto sites = trace_sites(*a.window(), ts);
  const std::size_t B = a.window()->bands();
  std::vector<std::ptrdiff_t> column_of;
  if (a.is_columns()) {
    column_of.assign(a.rows(), -1);
    const auto& cols = a.columns_ref().cols;
    for (std::size_t j = 0; j < cols.size(); ++j) column_of[cols[j]] = static_cast<std::ptrdiff_t>(j);
  }
  cplx sum = 0;
  for (auto s : sites)
    for (std::size_t b = 0; b < B; ++b) {
      const auto r = static_cast<Eigen::Index>(s * B + b);
      if (a.is_dense()) {
        sum += a.dense_ref()(r, r);
      } else if (a.is_sparse()) {
        sum += a.sparse_ref().coeff(r, r);
      } else {
        const auto j = column_of[static_cast<std::size_t>(r)];
        require(j >= 0, ErrorKind::WindowMismatch, "trace needs a column outside the known block");
        sum += a.columns_ref().block(r, j);
      }
    }
  return sum / static_cast<double>(ts.normalization);
}

namespace {

void midpoint(const std::function<long double(const std::vector<long double>&)>& f,
              const std::vector<std::pair<long double, long double>>& box, const std::vector<std::size_t>& cells,
              std::size_t k, std::vector<long double>& x, long double& acc, std::size_t& evals) {
  if (k == box.size()) {
    acc += f(x);
    ++evals;
    return;
  }
  const long double step = (box[k].second - box[k].first) / static_cast<long double>(cells[k]);
  for (std::size_t i = 0; i < cells[k]; ++i) {
    x[k] = box[k].first + (static_cast<long double>(i) + 0.5L) * step;
    midpoint(f, box, cells, k + 1, x, acc, evals);
  }
}

long double midpoint_rule(const std::function<long double(const std::vector<long double>&)>& f,
                          const std::vector<std::pair<long double, long double>>& box,
                          const std::vector<std::size_t>& cells, std::size_t& evals) {
  std::vector<long double> x(box.size());
  long double acc = 0, cell = 1;
  for (std::size_t k = 0; k < box.size(); ++k)
    cell *= (box[k].second - box[k].first) / static_cast<long double>(cells[k]);
  midpoint(f, box, cells, 0, x, acc, evals);
  return acc * cell;
}

}  // namespace

QuadratureResult stratum_integral(const std::function<long double(const std::vector<long double>&)>& f,
                                  const TraceSpec& ts, long double h,
                                  const std::vector<std::pair<long double, long double>>& box_in) {
  require(!ts.periodic(), ErrorKind::InvalidArgument, "stratum integrals need a cone trace spec");
  const std::size_t d = ts.I.size();
  require(box_in.size() == d, ErrorKind::DimensionMismatch, "box needs one interval per element of I");
  auto box = box_in;
  for (auto& [lo, hi] : box) {
    require(std::isfinite(lo) && std::isfinite(hi), ErrorKind::UnboundedRegion, "integration box must be finite");
    lo = std::max(lo, 0.0L);
    require(hi >= lo, ErrorKind::InvalidArgument, "integration box is empty");
  }
  QuadratureResult out;
  require(ts.rationality.has_value(), ErrorKind::InvalidArgument,
          "the rationality class of I is undeclared; the measure μ_I is ambiguous");

  if (*ts.rationality == Rationality::CompletelyIrrational) {
    require(std::isfinite(h) && h > 0, ErrorKind::InvalidArgument, "quadrature step must be positive");
    std::vector<std::size_t> cells(d), coarse(d);
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) {
      const long double width = box[k].second - box[k].first;
      cells[k] = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(width / h)));
      cells[k] += cells[k] % 2;
      coarse[k] = cells[k] / 2;
      total *= cells[k];
    }
    require(total <= 100'000'000, ErrorKind::ResourceLimit, "quadrature grid too large");
    const long double fine = midpoint_rule(f, box, cells, out.evaluations);
    const long double rough = midpoint_rule(f, box, coarse, out.evaluations);
    out.value = fine / ts.covolume;
    out.est_error = std::fabs(fine - rough) / ts.covolume;
    return out;
  }

  // Rational: x = diag(1/q)·H·z runs over the image lattice, H lower triangular.
  const ConeSpec& sub = *ts.spec;
  require(sub.all_exact() && ts.kernel_covolume, ErrorKind::IrrationalInput,
          "rational stratum integral needs exact-rational facets");
  const std::size_t D = sub.dimension();
  IntMatrix M(d, std::vector<BigInt>(D));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < D; ++j) M[k][j] = sub.facet(k).numerator[j];
  const auto hnf = column_hermite(M);
  std::vector<std::vector<long double>> H(d, std::vector<long double>(d, 0));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      H[k][j] = hnf.H[k][j].convert_to<long double>() / static_cast<long double>(sub.facet(k).denominator);
  std::vector<long double> x(d), partial(d, 0);
  long double acc = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t k) {
    if (k == d) {
      acc += f(x);
      ++out.evaluations;
      return;
    }
    long double base = 0;
    for (std::size_t j = 0; j < k; ++j) base += H[k][j] * partial[j];
    const long double step = H[k][k];
    const long double a = (box[k].first - base) / step, b = (box[k].second - base) / step;
    const auto z_lo = static_cast<std::int64_t>(std::floor(std::min(a, b))) - 1;
    const auto z_hi = static_cast<std::int64_t>(std::ceil(std::max(a, b))) + 1;
    for (std::int64_t z = z_lo; z <= z_hi; ++z) {
      const long double xk = base + step * static_cast<long double>(z);
      // Offsets that are lattice values are taken inclusive within the tie tolerance.
      if (xk < box[k].first - kTieTolerance || xk > box[k].second + kTieTolerance) continue;
      partial[k] = static_cast<long double>(z);
      x[k] = xk;
      visit(k + 1);
    }
  };
  visit(0);
  out.value = acc / *ts.kernel_covolume;
  return out;
}

}  // namespace conehull
