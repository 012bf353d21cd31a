#pragma once

#include <string>

#include <Eigen/Dense>

#include "conehull/operator.hpp"

namespace conehull {

struct ModelSpec {
  std::string name = "two_band_chern";
  double m = 1;
};

// Two-band Chern insulator h(k) = sin k₁·σ₁ + sin k₂·σ₂ + (m + cos k₁ + cos k₂)·σ₃:
// onsite m·σ₃ and ⟨n|H|n+e_j⟩ = (σ₃ - iσ_j)/2. Hoppings leaving the window are dropped.
TruncatedOperator build_model(WindowPtr window, const ModelSpec& model);

// Bloch symbol h(k).
Eigen::Matrix2cd model_symbol(const ModelSpec& model, double k1, double k2);
// max_k ‖h(k)‖ = |m| + 2, which bounds the norm of every window compression.
double model_norm_bound(const ModelSpec& model);
// min_k ‖h(k)‖: the bulk spectrum avoids (-gap, gap).
double model_gap(const ModelSpec& model);

void check_model(const ModelSpec& model);

}  // namespace conehull
