#include "conehull/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conehull/eigensolver.hpp"
#include "conehull/errors.hpp"
#include "conehull/parallel.hpp"

namespace conehull {

std::string_view to_string(SwitchProfile p) {
  switch (p) {
    case SwitchProfile::Smoothstep: return "smoothstep";
    case SwitchProfile::Tanh: return "tanh";
    case SwitchProfile::Erf: return "erf";
  }
  return "smoothstep";
}

std::optional<SwitchProfile> parse_switch_profile(std::string_view text) {
  if (text == "smoothstep") return SwitchProfile::Smoothstep;
  if (text == "tanh") return SwitchProfile::Tanh;
  if (text == "erf") return SwitchProfile::Erf;
  return std::nullopt;
}

double switch_value(SwitchProfile p, double y) {
  switch (p) {
    case SwitchProfile::Smoothstep:
      if (y <= 0) return 0;
      if (y >= 1) return 1;
      return y * y * (3 - 2 * y);
    case SwitchProfile::Tanh: return 0.5 * (1 + std::tanh(12 * (y - 0.5)));
    case SwitchProfile::Erf: return 0.5 * std::erfc(-10 * (y - 0.5));
  }
  return 0;
}

ScalarFunction ScalarFunction::fermi_step(double fermi_level) { return {Kind::FermiStep, fermi_level, 0, {}}; }

ScalarFunction ScalarFunction::smooth_switch(double fermi_level, double width, SwitchProfile p) {
  require(width > 0, ErrorKind::InvalidArgument, "switch width must be positive");
  return {Kind::SmoothSwitch, fermi_level, width, p};
}

ScalarFunction ScalarFunction::exp_edge(double fermi_level, double width, SwitchProfile p) {
  require(width > 0, ErrorKind::InvalidArgument, "switch width must be positive");
  return {Kind::ExpEdge, fermi_level, width, p};
}

cplx ScalarFunction::operator()(double E) const {
  if (kind == Kind::FermiStep) return E <= fermi_level ? 1.0 : 0.0;
  const double g = switch_value(profile, (E - fermi_level + width / 2) / width);
  if (kind == Kind::SmoothSwitch) return g;
  const double phase = 2 * std::numbers::pi * g;
  return {std::cos(phase), std::sin(phase)};
}

namespace {

TruncatedOperator dense_route(const TruncatedOperator& h, const ScalarFunction& g) {
  const DenseMatrix m = h.dense();
  if (g.kind == ScalarFunction::Kind::FermiStep) {
    const double floor = -m.cwiseAbs().rowwise().sum().maxCoeff() - 1;
    const auto occupied = hermitian_eigensystem_in(m, floor, g.fermi_level);
    DenseMatrix p = DenseMatrix::Zero(m.rows(), m.cols());
    p.selfadjointView<Eigen::Lower>().rankUpdate(occupied.vectors);
    p.triangularView<Eigen::StrictlyUpper>() = p.adjoint();
    return TruncatedOperator(h.window(), std::move(p), true);
  }
  const auto sys = hermitian_eigensystem(m);
  Eigen::VectorXcd values(sys.values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = g(sys.values(i));
  DenseMatrix out = sys.vectors * values.asDiagonal() * sys.vectors.adjoint();
  if (g.real_valued()) out = (out + out.adjoint()) / 2.0;
  return TruncatedOperator(h.window(), std::move(out), g.real_valued());
}

}  // namespace

TruncatedOperator spectral_function(const TruncatedOperator& h, const ScalarFunction& g,
                                    const SpectralOptions& options, SpectralReport* report) {
  require(h.hermitian(), ErrorKind::NotHermitian, "spectral_function needs a Hermitian operator");
  SpectralReport local;
  SpectralReport& rep = report ? *report : local;
  if (!options.force_chebyshev && h.rows() <= options.dense_threshold) {
    rep = SpectralReport{"dense", 0, 0, 0, {0, 0}};
    return dense_route(h, g);
  }

  const SparseMatrix hs = h.sparse();
  const auto gersh = gershgorin_interval(hs);
  std::pair<double, double> interval = options.interval.value_or(gersh);
  require(interval.first < interval.second, ErrorKind::InvalidArgument, "Chebyshev interval is empty");
  const double center = (interval.first + interval.second) / 2, half = (interval.second - interval.first) / 2;
  if (options.interval && (gersh.first < interval.first || gersh.second > interval.second)) {
    const double radius = spectral_radius_estimate(hs, center);
    require(radius <= half * (1 + 1e-9), ErrorKind::IntervalViolation,
            "spectrum leaves the Chebyshev interval (|λ - c| >= " + std::to_string(radius) + " > " +
                std::to_string(half) + ")");
  }

  ScalarFunction f = g;
  double transition = g.width;
  if (g.kind == ScalarFunction::Kind::FermiStep) {
    require(options.gap > 0, ErrorKind::InvalidArgument,
            "fermi_step on the Chebyshev route needs the spectral gap half-width");
    // 1 below the gap, 0 above it.
    f = ScalarFunction::smooth_switch(g.fermi_level, 2 * options.gap, SwitchProfile::Erf);
    transition = 2 * options.gap;
  }
  const auto fn = [&](double E) -> cplx {
    return g.kind == ScalarFunction::Kind::FermiStep ? 1.0 - f(E).real() : f(E);
  };
  const double floor = 2 / transition * half * std::log(1e8);
  const auto series = chebyshev_fit(fn, interval.first, interval.second, static_cast<std::size_t>(std::ceil(floor)),
                                    options.chebyshev_tolerance, options.max_chebyshev_order);
  rep = SpectralReport{"chebyshev", series.coeffs.size() - 1, series.tail, floor, interval};

  std::vector<std::size_t> cols = options.columns;
  const bool all = cols.empty();
  if (all) {
    cols.resize(h.rows());
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  }
  const std::size_t chunk = std::max<std::size_t>(1, options.column_chunk);
  const std::size_t chunks = (cols.size() + chunk - 1) / chunk;
  DenseMatrix out(static_cast<Eigen::Index>(h.rows()), static_cast<Eigen::Index>(cols.size()));
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * chunk, end = std::min(cols.size(), begin + chunk);
    DenseMatrix x = DenseMatrix::Zero(out.rows(), static_cast<Eigen::Index>(end - begin));
    for (std::size_t j = begin; j < end; ++j) x(static_cast<Eigen::Index>(cols[j]), static_cast<Eigen::Index>(j - begin)) = 1;
    out.middleCols(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(end - begin)) = chebyshev_apply(hs, series, x);
  });
  if (all) {
    if (g.real_valued()) out = (out + out.adjoint()) / 2.0;
    return TruncatedOperator(h.window(), std::move(out), g.real_valued());
  }
  return TruncatedOperator(h.window(), ColumnBlock{std::move(out), std::move(cols)});
}

}  // namespace conehull
