#include "conehull/bulk_edge.hpp"

#include <cmath>

#include "conehull/errors.hpp"

namespace conehull {

Direction edge_direction(const ConeSpec& spec) {
  require(spec.dimension() == 2 && spec.facets() == 1, ErrorKind::DimensionMismatch,
          "edge pairings are implemented for D = 2, d = 1");
  const auto& v = spec.facet(0).value;
  return {static_cast<double>(v[1]), static_cast<double>(-v[0])};
}

PairingResult bulk_pairing(const ModelSpec& model, std::int64_t extent, const std::vector<Direction>& directions,
                           double fermi_level, double projection_tolerance) {
  const double gap = model_gap(model);
  require(std::fabs(fermi_level) < gap, ErrorKind::GapClosure, "Fermi level is not inside the bulk gap");
  const auto torus = SiteWindow::torus({extent, extent}, 2);
  const auto h = build_model(torus, model);
  const auto p = spectral_function(h, ScalarFunction::fermi_step(fermi_level));
  auto result = pair_even(p, directions, TraceSpec::torus(*torus), projection_tolerance);
  result.truncation = SlabWindow{static_cast<long double>(extent), static_cast<long double>(extent), 0};
  return result;
}

EdgePairing edge_pairing(const ModelSpec& model, const ConeSpec& spec, const SlabWindow& geometry,
                         const BulkEdgeOptions& options, std::optional<Direction> direction) {
  EdgePairing out;
  const Direction w = direction ? *direction : edge_direction(spec);
  require(spec.dimension() == 2 && spec.facets() == 1 && w.size() == 2, ErrorKind::DimensionMismatch,
          "edge pairings are implemented for D = 2, d = 1");
  out.gap = model_gap(model);
  const double ef = options.fermi_level;
  require(std::fabs(ef) < out.gap, ErrorKind::GapClosure, "Fermi level is not inside the bulk gap");
  out.width = options.width.value_or(0.8 * 2 * (out.gap - std::fabs(ef)));
  require(out.width > 0 && std::fabs(ef) + out.width / 2 < out.gap, ErrorKind::GapClosure,
          "switch interval [E_F − Δ/2, E_F + Δ/2] must lie inside the bulk gap");

  const auto window = SiteWindow::half_space(spec, geometry, 2);
  const auto ts = TraceSpec::cone(spec, IndexSet{0}, geometry);
  out.window_sites = window->size();
  const auto core = trace_sites(*window, ts);
  out.core_sites = core.size();
  const auto h = build_model(window, model);
  SpectralOptions so = options.spectral;
  const double r = model_norm_bound(model) * 1.01;
  if (!so.interval) so.interval = {{-r, r}};
  so.columns.clear();
  for (auto s : core)
    for (std::size_t b = 0; b < 2; ++b) so.columns.push_back(2 * s + b);
  const auto u = spectral_function(h, ScalarFunction::exp_edge(ef, out.width, options.profile), so, &out.spectral);
  out.edge = pair_odd(u, w, ts, options.odd);
  return out;
}

BulkEdgeReport bulk_edge_check(const ModelSpec& model, const ConeSpec& spec, const SlabWindow& geometry,
                               const BulkEdgeOptions& options) {
  BulkEdgeReport rep;
  rep.w = edge_direction(spec);
  rep.v = {static_cast<double>(spec.facet(0).value[0]), static_cast<double>(spec.facet(0).value[1])};
  const double gap = model_gap(model);
  require(std::fabs(options.fermi_level) < gap, ErrorKind::GapClosure, "Fermi level is not inside the bulk gap");
  if (options.width)
    require(*options.width > 0 && std::fabs(options.fermi_level) + *options.width / 2 < gap, ErrorKind::GapClosure,
            "switch interval [E_F − Δ/2, E_F + Δ/2] must lie inside the bulk gap");
  rep.oracle = bz_chern(model, options.oracle_grid, options.fermi_level);
  rep.bulk = bulk_pairing(model, options.torus_extent, {rep.w, rep.v}, options.fermi_level);
  auto e = edge_pairing(model, spec, geometry, options);
  rep.edge = std::move(e.edge);
  rep.gap = e.gap;
  rep.width = e.width;
  rep.spectral = e.spectral;
  rep.window_sites = e.window_sites;
  rep.core_sites = e.core_sites;
  rep.difference = std::abs(rep.edge.value - rep.bulk.value);
  return rep;
}

}  // namespace conehull
