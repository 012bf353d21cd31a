#pragma once

#include <cstddef>

#include "conehull/model.hpp"

namespace conehull {

struct BzChern {
  int value = 0;       // oracle convention: minus the lower-band field-strength sum
  double raw = 0;      // Σ F / 2π before rounding (its negative)
  double min_gap = 0;  // smallest band splitting / 2 on the grid
};

// Lattice field-strength (plaquette link product) Chern number of the lower band
// on a grid × grid Brillouin-zone mesh. Gap closure is an error.
BzChern bz_chern(const ModelSpec& model, std::size_t grid, double fermi_level = 0, double gap_tolerance = 1e-6);
inline int bz_chern_oracle(const ModelSpec& model, std::size_t grid) { return bz_chern(model, grid).value; }

}  // namespace conehull
