#include "conehull/eigensolver.hpp"

#include <complex>
#include <string>
#include <vector>

#include <lapacke.h>

#include "conehull/errors.hpp"

namespace conehull {

namespace {

void check_square(const Eigen::MatrixXcd& h) {
  require(h.rows() == h.cols(), ErrorKind::DimensionMismatch, "eigensolver needs a square matrix");
}

lapack_complex_double* lp(Eigen::MatrixXcd& m) { return reinterpret_cast<lapack_complex_double*>(m.data()); }

void check_info(lapack_int info, const char* routine) {
  require(info == 0, ErrorKind::NotHermitian, std::string(routine) + " failed with info " + std::to_string(info));
}

}  // namespace

EigenSystem hermitian_eigensystem(const Eigen::MatrixXcd& h) {
  check_square(h);
  EigenSystem out{Eigen::VectorXd(h.rows()), h};
  if (h.rows() == 0) return out;
  const auto n = static_cast<lapack_int>(h.rows());
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, lp(out.vectors), n, out.values.data()), "zheevd");
  return out;
}

EigenSystem hermitian_eigensystem_in(const Eigen::MatrixXcd& h, double lower, double upper) {
  check_square(h);
  require(lower < upper, ErrorKind::InvalidArgument, "empty eigenvalue range");
  EigenSystem out;
  if (h.rows() == 0) return out;
  const auto n = static_cast<lapack_int>(h.rows());
  Eigen::MatrixXcd a = h;
  Eigen::VectorXd w(n);
  Eigen::MatrixXcd z(n, n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  check_info(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, lp(a), n, lower, upper, 0, 0, 0.0, &found, w.data(),
                            lp(z), n, support.data()),
             "zheevr");
  out.values = w.head(found);
  out.vectors = z.leftCols(found);
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
  check_square(h);
  Eigen::VectorXd w(h.rows());
  if (h.rows() == 0) return w;
  Eigen::MatrixXcd a = h;
  const auto n = static_cast<lapack_int>(h.rows());
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, lp(a), n, w.data()), "zheevd");
  return w;
}

}  // namespace conehull
