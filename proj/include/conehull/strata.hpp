#pragma once

#include <limits>
#include <string>
#include <vector>

#include "conehull/fell.hpp"

namespace conehull {

struct StratumLabel {
  IndexSet I;
  IndexSet J;
  std::vector<long double> x;  // length d, zero outside I
  long double x_error = 0;
  std::size_t codimension = 0;
  IndexSet escaped;
  std::vector<std::string> notes;
};

struct ClassifyOptions {
  long double escape_threshold = 0.5;
  // Scale for the escape cutoff; defaults to the pattern's truncation radius
  // (infinite for analytic patterns, which then escape only where unconstrained).
  long double radius = std::numeric_limits<long double>::infinity();
  HullOptions hull;
};

struct GammaValue {
  std::vector<long double> x;  // length d, zero outside I
  long double x_error = 0;
};

// x_k = -inf over the pattern of v_k·n for k ∈ I (clamped at 0).
GammaValue gamma(const Pattern& p, const IndexSet& I, const ConeSpec& spec, const ClassifyOptions& options = {});

StratumLabel classify(const Pattern& p, const ConeSpec& spec, const ClassifyOptions& options = {});

std::size_t filtration_level(const StratumLabel& label);

// hull_point(I, J, x) of the label.
Pattern reconstruct(const StratumLabel& label, const ConeSpec& spec);

}  // namespace conehull
