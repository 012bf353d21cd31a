#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace conehull {

// f(E) ≈ Σ_k c_k T_k((E - center) / half_width) on [lo, hi].
struct ChebyshevSeries {
  double lo = -1, hi = 1;
  std::vector<std::complex<double>> coeffs;
  double tail = 0;  // Σ |c_k| over the discarded coefficients
  double center() const { return (hi + lo) / 2; }
  double half_width() const { return (hi - lo) / 2; }
  std::complex<double> operator()(double E) const;
};

// Interpolates f at Chebyshev nodes and truncates at the smallest order
// >= min_order whose discarded tail is below tolerance (capped at max_order).
ChebyshevSeries chebyshev_fit(const std::function<std::complex<double>(double)>& f, double lo, double hi,
                              std::size_t min_order, double tolerance, std::size_t max_order);

using SparseRowMajor = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

// Y = s(H) X by the three-term recurrence.
Eigen::MatrixXcd chebyshev_apply(const SparseRowMajor& h, const ChebyshevSeries& s, const Eigen::MatrixXcd& x);

// Largest |λ - center| estimate by power iteration (a lower bound on the true value).
double spectral_radius_estimate(const SparseRowMajor& h, double center, std::size_t iterations = 60);
// Gershgorin enclosure of the spectrum.
std::pair<double, double> gershgorin_interval(const SparseRowMajor& h);

}  // namespace conehull
