#pragma once

#include <optional>

#include "conehull/bz_oracle.hpp"
#include "conehull/cocycle.hpp"
#include "conehull/spectral.hpp"

namespace conehull {

struct BulkEdgeOptions {
  double fermi_level = 0;
  // Switch width Δ; defaults to 80% of the bulk gap interval around E_F.
  std::optional<double> width;
  SwitchProfile profile = SwitchProfile::Erf;
  std::int64_t torus_extent = 32;
  std::size_t oracle_grid = 64;
  SpectralOptions spectral;
  OddPairingOptions odd;
};

struct BulkEdgeReport {
  PairingResult bulk;  // torus, directions (w, v)
  PairingResult edge;  // half-space core, direction w
  BzChern oracle;
  double difference = 0;
  Direction v, w;
  double gap = 0;
  double width = 0;
  SpectralReport spectral;
  std::size_t window_sites = 0;
  std::size_t core_sites = 0;
};

struct EdgePairing {
  PairingResult edge;
  double gap = 0;
  double width = 0;
  SpectralReport spectral;
  std::size_t window_sites = 0;
  std::size_t core_sites = 0;
};

// w = (v₂, −v₁) for the single facet v; requires D = 2, d = 1.
Direction edge_direction(const ConeSpec& spec);

// Even pairing of the Fermi projection on an extent² torus.
PairingResult bulk_pairing(const ModelSpec& model, std::int64_t extent, const std::vector<Direction>& directions,
                           double fermi_level = 0, double projection_tolerance = 1e-8);

// Odd pairing of exp(2πi·g̃(H)) on the half-space window; direction defaults to edge_direction(spec).
EdgePairing edge_pairing(const ModelSpec& model, const ConeSpec& spec, const SlabWindow& geometry,
                         const BulkEdgeOptions& options = {}, std::optional<Direction> direction = std::nullopt);

BulkEdgeReport bulk_edge_check(const ModelSpec& model, const ConeSpec& spec, const SlabWindow& geometry,
                               const BulkEdgeOptions& options = {});

}  // namespace conehull
