#pragma once

#include <limits>

#include <Eigen/Dense>

namespace conehull {

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // orthonormal columns
};

// Full Hermitian eigendecomposition (divide and conquer).
EigenSystem hermitian_eigensystem(const Eigen::MatrixXcd& h);
// Eigenpairs with eigenvalue in (lower, upper] only (MRRR).
EigenSystem hermitian_eigensystem_in(const Eigen::MatrixXcd& h, double lower, double upper);
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& h);

}  // namespace conehull
