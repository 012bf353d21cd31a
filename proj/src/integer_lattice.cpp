#include "conehull/integer_lattice.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "conehull/errors.hpp"

namespace conehull {

namespace {

void swap_columns(IntMatrix& A, std::size_t a, std::size_t b) {
  for (auto& row : A) std::swap(row[a], row[b]);
}

// column a -= q * column b
void axpy_column(IntMatrix& A, std::size_t a, std::size_t b, const BigInt& q) {
  if (q == 0) return;
  for (auto& row : A) row[a] -= q * row[b];
}

void negate_column(IntMatrix& A, std::size_t a) {
  for (auto& row : A) row[a] = -row[a];
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

ColumnHermite column_hermite(const IntMatrix& M) {
  ColumnHermite out;
  out.H = M;
  const std::size_t rows = M.size();
  const std::size_t cols = rows ? M.front().size() : 0;
  out.U.assign(cols, std::vector<BigInt>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j) out.U[j][j] = 1;

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < rows && pivot < cols; ++i) {
    auto& H = out.H;
    // Euclid on row i across columns [pivot, cols): gather the gcd into `pivot`.
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = pivot; j < cols; ++j)
        if (H[i][j] != 0 && (best == cols || abs(H[i][j]) < abs(H[i][best]))) best = j;
      if (best == cols) break;
      if (best != pivot) {
        swap_columns(H, pivot, best);
        swap_columns(out.U, pivot, best);
      }
      bool done = true;
      for (std::size_t j = pivot + 1; j < cols; ++j) {
        if (H[i][j] == 0) continue;
        const BigInt q = floor_div(H[i][j], H[i][pivot]);
        axpy_column(H, j, pivot, q);
        axpy_column(out.U, j, pivot, q);
        if (H[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (H[i][pivot] == 0) continue;
    if (H[i][pivot] < 0) {
      negate_column(H, pivot);
      negate_column(out.U, pivot);
    }
    for (std::size_t j = 0; j < pivot; ++j) {
      const BigInt q = floor_div(H[i][j], H[i][pivot]);
      axpy_column(H, j, pivot, q);
      axpy_column(out.U, j, pivot, q);
    }
    ++pivot;
  }
  out.rank = pivot;
  return out;
}

std::int64_t to_int64_checked(const BigInt& x) {
  require(x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min(),
          ErrorKind::ResourceLimit, "integer entry exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}

std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& M) {
  const auto hnf = column_hermite(M);
  const std::size_t cols = hnf.U.size();
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t j = hnf.rank; j < cols; ++j) {
    std::vector<std::int64_t> b(cols);
    for (std::size_t r = 0; r < cols; ++r) b[r] = to_int64_checked(hnf.U[r][j]);
    basis.push_back(std::move(b));
  }
  lll_reduce(basis);
  for (auto& b : basis) {
    for (auto c : b) {
      if (c == 0) continue;
      if (c < 0)
        for (auto& e : b) e = -e;
      break;
    }
  }
  return basis;
}

BigInt determinant(IntMatrix A) {
  const std::size_t n = A.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

BigInt gram_determinant(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  IntMatrix G(r, std::vector<BigInt>(r, 0));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      BigInt s = 0;
      for (std::size_t k = 0; k < rows[a].size(); ++k) s += BigInt(rows[a][k]) * rows[b][k];
      G[a][b] = s;
    }
  return determinant(std::move(G));
}

void lll_reduce(std::vector<std::vector<std::int64_t>>& B) {
  const std::size_t n = B.size();
  if (n < 2) return;
  const std::size_t dim = B[0].size();
  auto dot = [&](const std::vector<long double>& a, const std::vector<long double>& b) {
    long double s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
  };
  auto gram_schmidt = [&](std::vector<std::vector<long double>>& Bs, std::vector<std::vector<long double>>& mu) {
    Bs.assign(n, std::vector<long double>(dim));
    mu.assign(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) Bs[i][k] = static_cast<long double>(B[i][k]);
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<long double> bi(dim);
        for (std::size_t k = 0; k < dim; ++k) bi[k] = static_cast<long double>(B[i][k]);
        mu[i][j] = dot(bi, Bs[j]) / dot(Bs[j], Bs[j]);
        for (std::size_t k = 0; k < dim; ++k) Bs[i][k] -= mu[i][j] * Bs[j][k];
      }
    }
  };
  std::vector<std::vector<long double>> Bs, mu;
  gram_schmidt(Bs, mu);
  std::size_t k = 1;
  for (int guard = 0; k < n && guard < 10000; ++guard) {
    for (std::size_t j = k; j-- > 0;) {
      const long double q = std::round(mu[k][j]);
      if (q != 0) {
        const auto qi = static_cast<std::int64_t>(q);
        for (std::size_t c = 0; c < dim; ++c) B[k][c] -= qi * B[j][c];
        gram_schmidt(Bs, mu);
      }
    }
    if (dot(Bs[k], Bs[k]) >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * dot(Bs[k - 1], Bs[k - 1])) {
      ++k;
    } else {
      std::swap(B[k], B[k - 1]);
      gram_schmidt(Bs, mu);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

}  // namespace conehull
