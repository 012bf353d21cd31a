#include "conehull/operator.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <ostream>

#include "conehull/errors.hpp"

namespace conehull {

namespace {

void check_window(const TruncatedOperator& a, const TruncatedOperator& b) {
  require(a.window()->same_as(*b.window()), ErrorKind::WindowMismatch, "operators live on different windows");
}

std::vector<Eigen::Triplet<cplx>> triplets(const TruncatedOperator& a) {
  std::vector<Eigen::Triplet<cplx>> out;
  if (a.is_sparse()) {
    const auto& s = a.sparse_ref();
    for (Eigen::Index r = 0; r < s.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(s, r); it; ++it)
        if (it.value() != cplx(0)) out.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  } else if (a.is_dense()) {
    const auto& d = a.dense_ref();
    for (Eigen::Index r = 0; r < d.rows(); ++r)
      for (Eigen::Index c = 0; c < d.cols(); ++c)
        if (d(r, c) != cplx(0)) out.emplace_back(static_cast<int>(r), static_cast<int>(c), d(r, c));
  } else {
    const auto& b = a.columns_ref();
    for (Eigen::Index r = 0; r < b.block.rows(); ++r)
      for (std::size_t j = 0; j < b.cols.size(); ++j)
        if (b.block(r, static_cast<Eigen::Index>(j)) != cplx(0))
          out.emplace_back(static_cast<int>(r), static_cast<int>(b.cols[j]), b.block(r, static_cast<Eigen::Index>(j)));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.row() != y.row() ? x.row() < y.row() : x.col() < y.col();
  });
  return out;
}

// w·(n_s - n_r) for every site pair, evaluated lazily per pair.
class Phase {
 public:
  Phase(const SiteWindow& w, const std::vector<double>& dir) : w_(w), dir_(dir) {
    require(dir.size() == w.dimension(), ErrorKind::DimensionMismatch, "direction dimension differs from window");
    if (!w.periodic()) {
      proj_.reserve(w.size());
      for (const auto& n : w.sites()) proj_.push_back(dot(n));
    }
  }
  double operator()(std::size_t s, std::size_t r) const {
    if (!w_.periodic()) return proj_[s] - proj_[r];
    return dot(w_.displacement(s, r));
  }

 private:
  double dot(const Point& n) const {
    double acc = 0;
    for (std::size_t k = 0; k < dir_.size(); ++k) acc += dir_[k] * static_cast<double>(n[k]);
    return acc;
  }
  const SiteWindow& w_;
  const std::vector<double>& dir_;
  std::vector<double> proj_;
};

}  // namespace

TruncatedOperator::TruncatedOperator(WindowPtr window, DenseMatrix m, bool hermitian)
    : window_(std::move(window)), m_(std::move(m)), hermitian_(hermitian) {
  const auto n = static_cast<Eigen::Index>(window_->rows());
  require(dense_ref().rows() == n && dense_ref().cols() == n, ErrorKind::DimensionMismatch,
          "matrix dimension does not match the window");
}

TruncatedOperator::TruncatedOperator(WindowPtr window, SparseMatrix m, bool hermitian)
    : window_(std::move(window)), m_(std::move(m)), hermitian_(hermitian) {
  const auto n = static_cast<Eigen::Index>(window_->rows());
  require(sparse_ref().rows() == n && sparse_ref().cols() == n, ErrorKind::DimensionMismatch,
          "matrix dimension does not match the window");
}

TruncatedOperator::TruncatedOperator(WindowPtr window, ColumnBlock m) : window_(std::move(window)), m_(std::move(m)) {
  const auto& b = columns_ref();
  require(b.block.rows() == static_cast<Eigen::Index>(window_->rows()) &&
              b.block.cols() == static_cast<Eigen::Index>(b.cols.size()),
          ErrorKind::DimensionMismatch, "column block does not match the window");
  for (auto c : b.cols) require(c < window_->rows(), ErrorKind::DimensionMismatch, "column index out of range");
}

TruncatedOperator TruncatedOperator::zero(WindowPtr window) {
  const auto n = static_cast<Eigen::Index>(window->rows());
  return TruncatedOperator(std::move(window), SparseMatrix(n, n), true);
}

TruncatedOperator TruncatedOperator::identity(WindowPtr window) {
  const auto n = static_cast<Eigen::Index>(window->rows());
  SparseMatrix m(n, n);
  m.setIdentity();
  return TruncatedOperator(std::move(window), std::move(m), true);
}

TruncatedOperator TruncatedOperator::site_diagonal(
    WindowPtr window, const std::function<cplx(const Point&, std::size_t, std::size_t)>& f) {
  const std::size_t B = window->bands();
  std::vector<Eigen::Triplet<cplx>> t;
  for (std::size_t s = 0; s < window->size(); ++s)
    for (std::size_t a = 0; a < B; ++a)
      for (std::size_t b = 0; b < B; ++b) {
        const cplx v = f(window->site(s), a, b);
        if (v != cplx(0)) t.emplace_back(static_cast<int>(s * B + a), static_cast<int>(s * B + b), v);
      }
  const auto n = static_cast<Eigen::Index>(window->rows());
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return TruncatedOperator(std::move(window), std::move(m));
}

DenseMatrix TruncatedOperator::dense() const {
  if (is_dense()) return dense_ref();
  require(is_sparse(), ErrorKind::InvalidArgument, "a column-block operator has no full matrix");
  return DenseMatrix(sparse_ref());
}

SparseMatrix TruncatedOperator::sparse() const {
  if (is_sparse()) return sparse_ref();
  require(is_dense(), ErrorKind::InvalidArgument, "a column-block operator has no full matrix");
  return dense_ref().sparseView(0.0, 0.0);
}

double TruncatedOperator::hermiticity_defect() const {
  if (is_dense()) return (dense_ref() - dense_ref().adjoint()).cwiseAbs().maxCoeff();
  require(is_sparse(), ErrorKind::InvalidArgument, "hermiticity needs the full matrix");
  const SparseMatrix d = sparse_ref() - SparseMatrix(sparse_ref().adjoint());
  double worst = 0;
  for (Eigen::Index r = 0; r < d.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(d, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

TruncatedOperator& TruncatedOperator::mark_hermitian(double tol) {
  const double defect = hermiticity_defect();
  require(defect <= tol, ErrorKind::NotHermitian, "operator is not Hermitian (defect " + std::to_string(defect) + ")");
  hermitian_ = true;
  return *this;
}

TruncatedOperator TruncatedOperator::adjoint() const {
  if (is_dense()) return TruncatedOperator(window_, DenseMatrix(dense_ref().adjoint()), hermitian_);
  require(is_sparse(), ErrorKind::InvalidArgument, "the adjoint of a column block is a row block");
  return TruncatedOperator(window_, SparseMatrix(sparse_ref().adjoint()), hermitian_);
}

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_window(a, b);
  const bool h = a.hermitian() && b.hermitian();
  if (a.is_sparse() && b.is_sparse()) return TruncatedOperator(a.window(), SparseMatrix(a.sparse_ref() + b.sparse_ref()), h);
  return TruncatedOperator(a.window(), DenseMatrix(a.dense() + b.dense()), h);
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_window(a, b);
  const bool h = a.hermitian() && b.hermitian();
  if (a.is_sparse() && b.is_sparse()) return TruncatedOperator(a.window(), SparseMatrix(a.sparse_ref() - b.sparse_ref()), h);
  return TruncatedOperator(a.window(), DenseMatrix(a.dense() - b.dense()), h);
}

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_window(a, b);
  if (a.is_sparse() && b.is_sparse()) return TruncatedOperator(a.window(), SparseMatrix(a.sparse_ref() * b.sparse_ref()));
  if (a.is_sparse()) return TruncatedOperator(a.window(), DenseMatrix(a.sparse_ref() * b.dense()));
  if (b.is_sparse()) return TruncatedOperator(a.window(), DenseMatrix(a.dense() * b.sparse_ref()));
  return TruncatedOperator(a.window(), DenseMatrix(a.dense() * b.dense()));
}

TruncatedOperator operator*(cplx s, const TruncatedOperator& a) {
  const bool h = a.hermitian() && s.imag() == 0;
  if (a.is_sparse()) return TruncatedOperator(a.window(), SparseMatrix(s * a.sparse_ref()), h);
  if (a.is_dense()) return TruncatedOperator(a.window(), DenseMatrix(s * a.dense_ref()), h);
  ColumnBlock b = a.columns_ref();
  b.block *= s;
  return TruncatedOperator(a.window(), std::move(b));
}

void TruncatedOperator::write_csv(std::ostream& out) const {
  out << "row,col,re,im\n";
  char buf[128];
  for (const auto& t : triplets(*this)) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", t.row(), t.col(), t.value().real(), t.value().imag());
    out << buf;
  }
}

void TruncatedOperator::write_binary(std::ostream& out) const {
  const auto put = [&](const void* p, std::size_t n) { out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); };
  const auto t = triplets(*this);
  const std::uint64_t header[3] = {rows(), rows(), t.size()};
  put("CHOPMAT1", 8);
  put(header, sizeof header);
  for (const auto& e : t) {
    const std::uint64_t rc[2] = {static_cast<std::uint64_t>(e.row()), static_cast<std::uint64_t>(e.col())};
    const double v[2] = {e.value().real(), e.value().imag()};
    put(rc, sizeof rc);
    put(v, sizeof v);
  }
}

TruncatedOperator translation(WindowPtr window, const Point& l) {
  require(l.size() == window->dimension(), ErrorKind::DimensionMismatch, "translation dimension differs from window");
  if (window->spec())
    require(cone_membership(l, *window->spec()).inside, ErrorKind::InvalidArgument,
            "translation " + l.to_string() + " is outside the cone semigroup");
  const std::size_t B = window->bands();
  std::vector<Eigen::Triplet<cplx>> t;
  for (std::size_t s = 0; s < window->size(); ++s) {
    const auto target = window->index_of(window->site(s) + l);
    if (!target) continue;
    for (std::size_t b = 0; b < B; ++b) t.emplace_back(static_cast<int>(s * B + b), static_cast<int>(*target * B + b), 1.0);
  }
  const auto n = static_cast<Eigen::Index>(window->rows());
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return TruncatedOperator(std::move(window), std::move(m), l.is_zero());
}

TruncatedOperator position_derivation(const TruncatedOperator& a, const std::vector<double>& w) {
  const auto& win = *a.window();
  const Phase phase(win, w);
  const std::size_t B = win.bands();
  const cplx I(0, 1);
  if (a.is_sparse()) {
    SparseMatrix m = a.sparse_ref();
    for (Eigen::Index r = 0; r < m.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it)
        it.valueRef() *= I * phase(static_cast<std::size_t>(it.row()) / B, static_cast<std::size_t>(it.col()) / B);
    return TruncatedOperator(a.window(), std::move(m));
  }
  if (a.is_dense()) {
    DenseMatrix m = a.dense_ref();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        m(r, c) *= I * phase(static_cast<std::size_t>(r) / B, static_cast<std::size_t>(c) / B);
    return TruncatedOperator(a.window(), std::move(m));
  }
  ColumnBlock b = a.columns_ref();
  for (std::size_t j = 0; j < b.cols.size(); ++j)
    for (Eigen::Index r = 0; r < b.block.rows(); ++r)
      b.block(r, static_cast<Eigen::Index>(j)) *= I * phase(static_cast<std::size_t>(r) / B, b.cols[j] / B);
  return TruncatedOperator(a.window(), std::move(b));
}

TruncatedOperator conditional_expectation(const TruncatedOperator& a) {
  const std::size_t B = a.window()->bands();
  const bool h = a.hermitian();
  if (a.is_columns()) {
    ColumnBlock b = a.columns_ref();
    for (std::size_t j = 0; j < b.cols.size(); ++j)
      for (Eigen::Index r = 0; r < b.block.rows(); ++r)
        if (static_cast<std::size_t>(r) / B != b.cols[j] / B) b.block(r, static_cast<Eigen::Index>(j)) = 0;
    return TruncatedOperator(a.window(), std::move(b));
  }
  std::vector<Eigen::Triplet<cplx>> t;
  for (std::size_t s = 0; s < a.window()->size(); ++s)
    for (std::size_t p = 0; p < B; ++p)
      for (std::size_t q = 0; q < B; ++q) {
        const auto r = static_cast<Eigen::Index>(s * B + p), c = static_cast<Eigen::Index>(s * B + q);
        const cplx v = a.is_dense() ? a.dense_ref()(r, c) : a.sparse_ref().coeff(r, c);
        if (v != cplx(0)) t.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
      }
  const auto n = static_cast<Eigen::Index>(a.rows());
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return TruncatedOperator(a.window(), std::move(m), h);
}

}  // namespace conehull
