#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conehull/chebyshev.hpp"
#include "conehull/operator.hpp"

namespace conehull {

// Shape of the 0→1 switch on y = (E - E_F + Δ/2)/Δ.
//   smoothstep: y²(3 - 2y) clamped to [0, 1]; C¹, exactly 0/1 outside the switch.
//   tanh:       (1 + tanh(12(y - 1/2)))/2; C^∞, tails ~6e-6 at the switch ends.
//   erf:        (1 + erf(10(y - 1/2)))/2;  C^∞, tails ~8e-13 at the switch ends.
enum class SwitchProfile { Smoothstep, Tanh, Erf };

std::string_view to_string(SwitchProfile p);
std::optional<SwitchProfile> parse_switch_profile(std::string_view text);
double switch_value(SwitchProfile p, double y);

struct ScalarFunction {
  enum class Kind { FermiStep, SmoothSwitch, ExpEdge };
  Kind kind = Kind::FermiStep;
  double fermi_level = 0;
  double width = 1;  // Δ
  SwitchProfile profile = SwitchProfile::Smoothstep;

  // χ(E <= E_F)
  static ScalarFunction fermi_step(double fermi_level);
  // g̃(E), rising from 0 to 1 across [E_F - Δ/2, E_F + Δ/2]
  static ScalarFunction smooth_switch(double fermi_level, double width, SwitchProfile p = SwitchProfile::Smoothstep);
  // exp(2πi·g̃(E))
  static ScalarFunction exp_edge(double fermi_level, double width, SwitchProfile p = SwitchProfile::Smoothstep);

  cplx operator()(double E) const;
  bool real_valued() const { return kind != Kind::ExpEdge; }
};

struct SpectralOptions {
  std::size_t dense_threshold = 6000;
  bool force_chebyshev = false;
  // Chebyshev route: enclosure of the spectrum (defaults to the Gershgorin interval).
  std::optional<std::pair<double, double>> interval;
  double chebyshev_tolerance = 1e-12;  // target for the discarded coefficient tail
  std::size_t max_chebyshev_order = 4000;
  // Chebyshev route for fermi_step: the spectrum avoids (E_F - gap, E_F + gap),
  // and the step is replaced by an erf switch across that interval.
  double gap = 0;
  // Chebyshev route: evaluate only these columns (all columns when empty).
  std::vector<std::size_t> columns;
  std::size_t column_chunk = 32;
};

struct SpectralReport {
  std::string method;  // "dense" or "chebyshev"
  std::size_t order = 0;
  double tail = 0;
  double order_floor = 0;  // 2/gap·radius·log(1e8)
  std::pair<double, double> interval{0, 0};
};

TruncatedOperator spectral_function(const TruncatedOperator& h, const ScalarFunction& g,
                                    const SpectralOptions& options = {}, SpectralReport* report = nullptr);

}  // namespace conehull
