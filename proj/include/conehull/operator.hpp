#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "conehull/site_window.hpp"

namespace conehull {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// An operator known only on a subset of its columns (e.g. a matrix function
// applied to the trace core). `block` holds those columns in `cols` order.
struct ColumnBlock {
  DenseMatrix block;
  std::vector<std::size_t> cols;
};

class TruncatedOperator {
 public:
  TruncatedOperator(WindowPtr window, DenseMatrix m, bool hermitian = false);
  TruncatedOperator(WindowPtr window, SparseMatrix m, bool hermitian = false);
  TruncatedOperator(WindowPtr window, ColumnBlock m);

  static TruncatedOperator zero(WindowPtr window);
  static TruncatedOperator identity(WindowPtr window);
  // Block-diagonal: f(site, band_row, band_col) at each site.
  static TruncatedOperator site_diagonal(WindowPtr window,
                                         const std::function<cplx(const Point&, std::size_t, std::size_t)>& f);

  const WindowPtr& window() const noexcept { return window_; }
  std::size_t rows() const noexcept { return window_->rows(); }
  bool hermitian() const noexcept { return hermitian_; }

  bool is_dense() const noexcept { return std::holds_alternative<DenseMatrix>(m_); }
  bool is_sparse() const noexcept { return std::holds_alternative<SparseMatrix>(m_); }
  bool is_columns() const noexcept { return std::holds_alternative<ColumnBlock>(m_); }
  const DenseMatrix& dense_ref() const { return std::get<DenseMatrix>(m_); }
  const SparseMatrix& sparse_ref() const { return std::get<SparseMatrix>(m_); }
  const ColumnBlock& columns_ref() const { return std::get<ColumnBlock>(m_); }

  // Full dense / sparse copies (column-block operators cannot be completed).
  DenseMatrix dense() const;
  SparseMatrix sparse() const;

  // Largest |A - A†| entry.
  double hermiticity_defect() const;
  // Sets the flag after checking ‖A - A†‖∞ <= tol.
  TruncatedOperator& mark_hermitian(double tol = 1e-12);

  TruncatedOperator adjoint() const;
  friend TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator*(cplx s, const TruncatedOperator& a);

  // (row, col, re, im) lines with a header, rows/cols 0-based; exact nonzeros only.
  void write_csv(std::ostream& out) const;
  // Little-endian container: "CHOPMAT1", rows, cols, nnz (uint64), then
  // nnz records (uint64 row, uint64 col, double re, double im).
  void write_binary(std::ostream& out) const;

 private:
  WindowPtr window_;
  std::variant<DenseMatrix, SparseMatrix, ColumnBlock> m_;
  bool hermitian_ = false;
};

// (V_l ψ)(n) = ψ(n + l): entries ⟨n|V_l|n+l⟩ = 1 (⊗ band identity) when both sites lie in the window.
TruncatedOperator translation(WindowPtr window, const Point& l);

// ∇_w a = i[w·𝔫, a]: entries i·w·(n - m)·a_nm.
TruncatedOperator position_derivation(const TruncatedOperator& a, const std::vector<double>& w);

// Keeps the band blocks on the site diagonal.
TruncatedOperator conditional_expectation(const TruncatedOperator& a);

}  // namespace conehull
