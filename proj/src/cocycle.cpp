#include "conehull/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "conehull/errors.hpp"
#include "conehull/parallel.hpp"

namespace conehull {

const char* const kPairingConvention =
    "derivations ∇_w = i[w·n, ·] on the integer lattice; even value = (2π)²·Ch/(−2πi), odd value = "
    "(2π)·(−i/2π)·Ch(u*−1, u−1); sign fixed so that the even pairing of the two-band model at m = 1 with "
    "directions (e1, e2) equals the Brillouin-zone oracle value −1";

namespace {

std::vector<std::size_t> trace_rows(const SiteWindow& w, const TraceSpec& ts) {
  const std::size_t B = w.bands();
  std::vector<std::size_t> rows;
  for (auto s : trace_sites(w, ts))
    for (std::size_t b = 0; b < B; ++b) rows.push_back(s * B + b);
  return rows;
}

DenseMatrix select_rows(const TruncatedOperator& a, const std::vector<std::size_t>& rows) {
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(a.rows()));
  if (a.is_dense()) {
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = a.dense_ref().row(static_cast<Eigen::Index>(rows[i]));
  } else if (a.is_sparse()) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (SparseMatrix::InnerIterator it(a.sparse_ref(), static_cast<Eigen::Index>(rows[i])); it; ++it)
        out(static_cast<Eigen::Index>(i), it.col()) = it.value();
  } else {
    fail(ErrorKind::InvalidArgument, "the first cocycle argument must be a full matrix");
  }
  return out;
}

DenseMatrix select_columns(const TruncatedOperator& a, const std::vector<std::size_t>& cols) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  DenseMatrix out(n, static_cast<Eigen::Index>(cols.size()));
  if (a.is_dense()) {
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.dense_ref().col(static_cast<Eigen::Index>(cols[j]));
    return out;
  }
  if (a.is_sparse()) {
    out.setZero();
    std::vector<std::ptrdiff_t> where(a.rows(), -1);
    for (std::size_t j = 0; j < cols.size(); ++j) where[cols[j]] = static_cast<std::ptrdiff_t>(j);
    const auto& s = a.sparse_ref();
    for (Eigen::Index r = 0; r < s.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(s, r); it; ++it)
        if (where[static_cast<std::size_t>(it.col())] >= 0) out(r, where[static_cast<std::size_t>(it.col())]) = it.value();
    return out;
  }
  const auto& b = a.columns_ref();
  std::vector<std::ptrdiff_t> where(a.rows(), -1);
  for (std::size_t j = 0; j < b.cols.size(); ++j) where[b.cols[j]] = static_cast<std::ptrdiff_t>(j);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(where[cols[j]] >= 0, ErrorKind::WindowMismatch, "operator is not known on a needed column");
    out.col(static_cast<Eigen::Index>(j)) = b.block.col(where[cols[j]]);
  }
  return out;
}

DenseMatrix times(const DenseMatrix& x, const TruncatedOperator& a) {
  if (a.is_sparse()) return x * a.sparse_ref();
  if (a.is_dense()) return x * a.dense_ref();
  fail(ErrorKind::InvalidArgument, "middle cocycle arguments must be full matrices");
}

int permutation_sign(const std::vector<std::size_t>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

// Σ_n w·(n_m - n_j)·|X_mj|² over the given columns j (rows m all), in column order.
long double odd_sum(const SiteWindow& w, const DenseMatrix& x, const std::vector<std::size_t>& cols,
                    const Direction& dir, std::size_t chunk) {
  const std::size_t B = w.bands();
  std::vector<double> proj;
  if (!w.periodic()) {
    proj.reserve(w.size());
    for (const auto& n : w.sites()) {
      double acc = 0;
      for (std::size_t k = 0; k < dir.size(); ++k) acc += dir[k] * static_cast<double>(n[k]);
      proj.push_back(acc);
    }
  }
  const auto phase = [&](std::size_t s, std::size_t r) {
    if (!w.periodic()) return proj[s] - proj[r];
    const Point d = w.displacement(s, r);
    double acc = 0;
    for (std::size_t k = 0; k < dir.size(); ++k) acc += dir[k] * static_cast<double>(d[k]);
    return acc;
  };
  const std::size_t chunks = (cols.size() + chunk - 1) / chunk;
  std::vector<long double> partial(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    long double acc = 0;
    for (std::size_t j = c * chunk; j < std::min(cols.size(), (c + 1) * chunk); ++j) {
      const std::size_t site = cols[j] / B;
      for (Eigen::Index m = 0; m < x.rows(); ++m)
        acc += static_cast<long double>(phase(static_cast<std::size_t>(m) / B, site) *
                                        std::norm(x(m, static_cast<Eigen::Index>(j))));
    }
    partial[c] = acc;
  });
  return std::accumulate(partial.begin(), partial.end(), 0.0L);
}

}  // namespace

cplx chern_cocycle(const std::vector<TruncatedOperator>& fs, const std::vector<Direction>& directions,
                   const TraceSpec& ts) {
  const std::size_t m = directions.size();
  require(m <= 3, ErrorKind::InvalidArgument, "cocycle degree above 3 is out of scope");
  require(fs.size() == m + 1, ErrorKind::DimensionMismatch, "cocycle needs m + 1 operators");
  const auto& window = fs.front().window();
  for (const auto& f : fs)
    require(f.window()->same_as(*window), ErrorKind::WindowMismatch, "cocycle operators live on different windows");
  for (const auto& w : directions)
    require(w.size() == window->dimension(), ErrorKind::DimensionMismatch, "direction dimension differs from window");

  const auto rows = trace_rows(*window, ts);
  const DenseMatrix head = select_rows(fs[0], rows);
  if (m == 0) {
    cplx sum = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) sum += head(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(rows[i]));
    return sum / static_cast<double>(ts.normalization);
  }
  // derived[i][k] = ∇_{w_k} f_{i+1}
  std::vector<std::vector<TruncatedOperator>> derived(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) derived[i].push_back(position_derivation(fs[i + 1], directions[k]));
  std::vector<DenseMatrix> last(m);
  for (std::size_t k = 0; k < m; ++k) last[k] = select_columns(derived[m - 1][k], rows);

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total = 0;
  do {
    DenseMatrix x = head;
    for (std::size_t i = 0; i + 1 < m; ++i) x = times(x, derived[i][perm[i]]);
    const DenseMatrix& tail = last[perm[m - 1]];
    cplx sum = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      sum += x.row(static_cast<Eigen::Index>(i)).transpose().cwiseProduct(tail.col(static_cast<Eigen::Index>(i))).sum();
    total += static_cast<double>(permutation_sign(perm)) * sum;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / static_cast<double>(ts.normalization);
}

PairingResult pair_even(const TruncatedOperator& p, const std::vector<Direction>& directions, const TraceSpec& ts,
                        double projection_tolerance) {
  require(directions.size() == 2, ErrorKind::InvalidArgument, "even pairing needs two directions");
  const DenseMatrix pd = p.dense();
  PairingResult out;
  const auto n = pd.rows();
  if (p.hermitian()) {
    // p·p† through a rank update; only the lower triangle is formed.
    DenseMatrix sq = DenseMatrix::Zero(n, n);
    sq.selfadjointView<Eigen::Lower>().rankUpdate(pd);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = c; r < n; ++r) out.defect = std::max(out.defect, std::abs(sq(r, c) - pd(r, c)));
  } else {
    out.defect = n ? (pd * pd - pd).cwiseAbs().maxCoeff() : 0;
  }
  require(out.defect <= projection_tolerance, ErrorKind::NotProjection,
          "input is not a projection (‖p² − p‖∞ = " + std::to_string(out.defect) + ")");
  const TruncatedOperator pp(p.window(), pd, p.hermitian());
  cplx ch;
  if (ts.periodic() && p.hermitian()) {
    // Full trace of hermitian factors: T(p∇₂p∇₁p) = conj T(p∇₁p∇₂p) by cyclicity.
    const DenseMatrix a = position_derivation(pp, directions[0]).dense();
    const DenseMatrix b = position_derivation(pp, directions[1]).dense();
    const DenseMatrix x = pd * a;
    // b is hermitian, so Σ x_ik b_ki = Σ x_ik conj(b_ik) walks both in storage order.
    const cplx t = (x.array() * b.array().conjugate()).sum();
    ch = (t - std::conj(t)) / static_cast<double>(ts.normalization);
  } else {
    ch = chern_cocycle({pp, pp, pp}, directions, ts);
  }
  out.value = cplx(0, 2 * std::numbers::pi) * ch;
  out.m = 2;
  out.directions = directions;
  out.truncation = ts.geometry;
  out.est_error = std::fabs(out.value.imag());
  out.convention_note = kPairingConvention;
  return out;
}

PairingResult pair_odd(const TruncatedOperator& u, const Direction& direction, const TraceSpec& ts,
                       const OddPairingOptions& options) {
  const auto& window = *u.window();
  require(direction.size() == window.dimension(), ErrorKind::DimensionMismatch, "direction dimension differs from window");
  const std::size_t chunk = std::max<std::size_t>(1, options.column_chunk);
  const std::size_t B = window.bands();
  const auto cols = trace_rows(window, ts);
  DenseMatrix x = select_columns(u, cols);
  for (std::size_t j = 0; j < cols.size(); ++j) x(static_cast<Eigen::Index>(cols[j]), static_cast<Eigen::Index>(j)) -= 1.0;

  PairingResult out;
  out.m = 1;
  out.directions = {direction};
  out.truncation = ts.geometry;
  out.convention_note = kPairingConvention;

  // Unitarity on diagonal Gram blocks: U_C†U_C = 1 with U_C = X_C + E_C.
  const std::size_t chunks = (cols.size() + chunk - 1) / chunk;
  std::vector<double> defects(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    const auto begin = static_cast<Eigen::Index>(c * chunk);
    const auto len = static_cast<Eigen::Index>(std::min(cols.size(), (c + 1) * chunk) - c * chunk);
    const DenseMatrix xc = x.middleCols(begin, len);
    DenseMatrix g = xc.adjoint() * xc;
    for (Eigen::Index i = 0; i < len; ++i)
      for (Eigen::Index j = 0; j < len; ++j) {
        const auto row = static_cast<Eigen::Index>(cols[static_cast<std::size_t>(begin + i)]);
        g(i, j) += x(row, begin + j) + std::conj(x(static_cast<Eigen::Index>(cols[static_cast<std::size_t>(begin + j)]), begin + i));
      }
    defects[c] = len ? g.cwiseAbs().maxCoeff() : 0;
  });
  out.defect = defects.empty() ? 0 : *std::max_element(defects.begin(), defects.end());
  require(out.defect <= options.unitarity_tolerance, ErrorKind::NotUnitary,
          "edge unitary fails unitarity on the core columns (defect " + std::to_string(out.defect) + ")");

  if (!ts.periodic()) {
    // Decay away from the boundary: u − 1 must have died out on the core columns in the
    // last unit layer before the depth cut. Rows outside the core are reached along the
    // gapless edge channel; that leakage is recorded and enters the t versus t/2 error.
    const auto depth = [&](std::size_t s) {
      long double d = 0;
      for (std::size_t k = 0; k < ts.I.size(); ++k) d = std::max(d, ts.spec->dot(k, window.site(s)));
      return d;
    };
    const long double t2 = ts.geometry.t * ts.geometry.t;
    double worst = 0, leak = 0;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (depth(cols[j] / B) >= ts.geometry.L - 1)
        worst = std::max(worst, x.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff());
    for (std::size_t s = 0; s < window.size(); ++s) {
      if (depth(s) <= ts.geometry.L && ts.spec->transverse_norm2(window.site(s)) <= t2) continue;
      for (std::size_t b = 0; b < B; ++b)
        leak = std::max(leak, x.row(static_cast<Eigen::Index>(s * B + b)).cwiseAbs().maxCoeff());
    }
    out.localization = worst;
    out.leakage = leak;
    require(worst <= options.localization_tolerance, ErrorKind::NotLocalized,
            "u − 1 has not decayed at the core depth (max " + std::to_string(worst) + "); enlarge L or the buffer");
  }

  const long double full = odd_sum(window, x, cols, direction, chunk) / ts.normalization;
  out.value = cplx(static_cast<double>(full), 0);
  if (!ts.periodic()) {
    const auto half_ts = ts.with_radius(ts.geometry.t / 2);
    const auto half_rows = trace_rows(window, half_ts);
    std::vector<std::size_t> where(window.rows(), 0);
    for (std::size_t j = 0; j < cols.size(); ++j) where[cols[j]] = j;
    DenseMatrix xh(x.rows(), static_cast<Eigen::Index>(half_rows.size()));
    for (std::size_t j = 0; j < half_rows.size(); ++j) xh.col(static_cast<Eigen::Index>(j)) = x.col(static_cast<Eigen::Index>(where[half_rows[j]]));
    const long double half = odd_sum(window, xh, half_rows, direction, chunk) / half_ts.normalization;
    out.ladder = {{half_ts.geometry.t, cplx(static_cast<double>(half), 0)}, {ts.geometry.t, out.value}};
    out.est_error = static_cast<double>(std::fabs(full - half));
  }
  return out;
}

}  // namespace conehull
