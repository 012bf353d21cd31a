#include "conehull/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conehull/errors.hpp"

namespace conehull {

std::complex<double> ChebyshevSeries::operator()(double E) const {
  const double y = (E - center()) / half_width();
  // Clenshaw recurrence.
  std::complex<double> b1 = 0, b2 = 0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    const std::complex<double> b0 = coeffs[k] + 2 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs.empty() ? 0 : coeffs[0] + y * b1 - b2;
}

namespace {

// Interpolation coefficients of f at `nodes` Chebyshev points of the first kind.
std::vector<std::complex<double>> interpolation_coefficients(const std::function<std::complex<double>(double)>& f,
                                                             double center, double half, std::size_t nodes) {
  // cos(k·θ_j) = cos(π·m / 2N) with θ_j = π(j + 1/2)/N and m = k(2j+1) mod 4N.
  const std::size_t period = 4 * nodes;
  std::vector<double> table(period);
  for (std::size_t m = 0; m < period; ++m)
    table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / (2.0 * static_cast<double>(nodes)));
  std::vector<std::complex<double>> samples(nodes);
  for (std::size_t j = 0; j < nodes; ++j) samples[j] = f(center + half * table[2 * j + 1]);
  std::vector<std::complex<double>> c(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t j = 0; j < nodes; ++j) acc += samples[j] * table[(k * (2 * j + 1)) % period];
    c[k] = acc * (2.0 / static_cast<double>(nodes));
  }
  c[0] /= 2;
  return c;
}

}  // namespace

ChebyshevSeries chebyshev_fit(const std::function<std::complex<double>(double)>& f, double lo, double hi,
                              std::size_t min_order, double tolerance, std::size_t max_order) {
  require(lo < hi, ErrorKind::InvalidArgument, "Chebyshev interval is empty");
  require(max_order >= 1, ErrorKind::InvalidArgument, "Chebyshev order must be positive");
  min_order = std::clamp<std::size_t>(min_order, 1, max_order);
  ChebyshevSeries s;
  s.lo = lo;
  s.hi = hi;
  // Double the node count until some order K has a negligible tail. The tail of
  // K is measured over the next K + 16 coefficients, which keeps rounding noise
  // in the far coefficients from masquerading as truncation error.
  for (std::size_t nodes = 256;; nodes *= 2) {
    const auto c = interpolation_coefficients(f, s.center(), s.half_width(), nodes);
    std::vector<double> suffix(nodes + 1, 0);
    for (std::size_t k = nodes; k-- > 0;) suffix[k] = suffix[k + 1] + std::abs(c[k]);
    const auto window_tail = [&](std::size_t K) { return suffix[K + 1] - suffix[std::min(nodes, 2 * K + 17)]; };
    const std::size_t usable = std::min(max_order, nodes / 2);
    for (std::size_t K = min_order; K <= usable; ++K)
      if (window_tail(K) <= tolerance) {
        s.coeffs.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(K + 1));
        s.tail = window_tail(K);
        return s;
      }
    if (nodes / 2 >= max_order) {
      s.coeffs.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(max_order + 1));
      s.tail = suffix[max_order + 1];
      return s;
    }
  }
}

namespace {

// out[j] = α·p[j] − q[j] + Σ_e h_e·src_e[j] on interleaved complex rows of length 2C.
struct RowTerm {
  double re, im;
  const double* src;
};

inline void combine_row(double* out, const double* p, double alpha, const double* q, const std::vector<RowTerm>& terms,
                        std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) out[j] = alpha * p[j] - (q ? q[j] : 0.0);
  for (const auto& t : terms) {
    const double* src = t.src;
    for (std::size_t j = 0; j < len; j += 2) {
      out[j] += t.re * src[j] - t.im * src[j + 1];
      out[j + 1] += t.re * src[j + 1] + t.im * src[j];
    }
  }
}

}  // namespace

Eigen::MatrixXcd chebyshev_apply(const SparseRowMajor& h, const ChebyshevSeries& s, const Eigen::MatrixXcd& x) {
  require(h.rows() == h.cols() && h.cols() == x.rows(), ErrorKind::DimensionMismatch, "Chebyshev operand mismatch");
  using RowBlock = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const double a = 1 / s.half_width(), b = -s.center() / s.half_width();
  const Eigen::Index n = x.rows();
  const auto len = static_cast<std::size_t>(2 * x.cols());
  if (s.coeffs.empty()) return Eigen::MatrixXcd::Zero(n, x.cols());
  // Rows are contiguous, so each sparse entry is one streamed row update.
  RowBlock prev = x;
  RowBlock y = s.coeffs[0] * prev;
  if (s.coeffs.size() < 2) return y;
  RowBlock cur(n, x.cols());
  const auto row = [&](RowBlock& m, Eigen::Index r) { return reinterpret_cast<double*>(m.data()) + r * static_cast<Eigen::Index>(len); };
  std::vector<RowTerm> terms;
  const auto gather = [&](Eigen::Index r, double scale, RowBlock& src) {
    terms.clear();
    for (SparseRowMajor::InnerIterator it(h, r); it; ++it)
      terms.push_back({scale * it.value().real(), scale * it.value().imag(), row(src, it.col())});
  };
  for (Eigen::Index r = 0; r < n; ++r) {
    gather(r, a, prev);
    combine_row(row(cur, r), row(prev, r), b, nullptr, terms, len);
  }
  y += s.coeffs[1] * cur;
  std::vector<double> next(len);
  for (std::size_t k = 2; k < s.coeffs.size(); ++k) {
    // T_{k+1} = 2H̃T_k − T_{k−1}, written over T_{k−1} row by row.
    const double cr = s.coeffs[k].real(), ci = s.coeffs[k].imag();
    for (Eigen::Index r = 0; r < n; ++r) {
      gather(r, 2 * a, cur);
      double* p = row(prev, r);
      combine_row(next.data(), row(cur, r), 2 * b, p, terms, len);
      double* yr = row(y, r);
      for (std::size_t j = 0; j < len; j += 2) {
        p[j] = next[j];
        p[j + 1] = next[j + 1];
        yr[j] += cr * next[j] - ci * next[j + 1];
        yr[j + 1] += cr * next[j + 1] + ci * next[j];
      }
    }
    prev.swap(cur);
  }
  return y;
}

double spectral_radius_estimate(const SparseRowMajor& h, double center, std::size_t iterations) {
  const auto n = h.rows();
  if (n == 0) return 0;
  // Fixed pseudo-random start vector keeps the estimate deterministic.
  Eigen::VectorXcd v(n);
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (Eigen::Index i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    v(i) = std::complex<double>(static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5, 0);
  }
  v.normalize();
  double estimate = 0;
  for (std::size_t it = 0; it < iterations; ++it) {
    Eigen::VectorXcd w = h * v - center * v;
    estimate = w.norm();
    if (estimate == 0) return 0;
    v = w / estimate;
  }
  return estimate;
}

std::pair<double, double> gershgorin_interval(const SparseRowMajor& h) {
  double lo = 0, hi = 0;
  bool first = true;
  for (Eigen::Index r = 0; r < h.outerSize(); ++r) {
    double diag = 0, radius = 0;
    for (SparseRowMajor::InnerIterator it(h, r); it; ++it) {
      if (it.col() == r) diag = it.value().real();
      else radius += std::abs(it.value());
    }
    if (first || diag - radius < lo) lo = diag - radius;
    if (first || diag + radius > hi) hi = diag + radius;
    first = false;
  }
  return {lo, hi};
}

}  // namespace conehull
