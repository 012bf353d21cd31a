#include "conehull/bz_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "conehull/errors.hpp"

namespace conehull {

BzChern bz_chern(const ModelSpec& model, std::size_t grid, double fermi_level, double gap_tolerance) {
  check_model(model);
  require(grid >= 2, ErrorKind::InvalidArgument, "Brillouin-zone grid needs at least 2 points per axis");
  const double step = 2 * std::numbers::pi / static_cast<double>(grid);
  std::vector<Eigen::Vector2cd> lower(grid * grid);
  BzChern out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < grid; ++a)
    for (std::size_t b = 0; b < grid; ++b) {
      const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
          model_symbol(model, step * static_cast<double>(a), step * static_cast<double>(b)));
      const auto& ev = es.eigenvalues();
      require(ev(0) < fermi_level && ev(1) > fermi_level, ErrorKind::GapClosure,
              "Fermi level is not in a gap of the Bloch symbol");
      out.min_gap = std::min(out.min_gap, (ev(1) - ev(0)) / 2);
      lower[a * grid + b] = es.eigenvectors().col(0);
    }
  require(out.min_gap > gap_tolerance, ErrorKind::GapClosure, "bulk gap closes on the Brillouin-zone grid");
  const auto link = [&](std::size_t a, std::size_t b, std::size_t da, std::size_t db) {
    const std::complex<double> z = lower[a * grid + b].dot(lower[((a + da) % grid) * grid + (b + db) % grid]);
    return z / std::abs(z);
  };
  double total = 0;
  for (std::size_t a = 0; a < grid; ++a)
    for (std::size_t b = 0; b < grid; ++b) {
      const auto u1 = link(a, b, 1, 0), u2 = link((a + 1) % grid, b, 0, 1);
      const auto u3 = link(a, (b + 1) % grid, 1, 0), u4 = link(a, b, 0, 1);
      total += std::arg(u1 * u2 / (u3 * u4));
    }
  out.raw = -total / (2 * std::numbers::pi);
  out.value = static_cast<int>(std::lround(out.raw));
  return out;
}

}  // namespace conehull
