#pragma once

// Exact integer linear algebra for the rational case (kernel lattices, image
// lattice covolumes). Entries are arbitrary precision; D is small.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace conehull {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<BigInt>>;  // row-major

struct ColumnHermite {
  IntMatrix H;  // M * U, lower echelon: columns [0, rank) nonzero, rest zero
  IntMatrix U;  // unimodular
  std::size_t rank = 0;
};

// Column-style Hermite reduction M * U = [H | 0] by unimodular column operations.
ColumnHermite column_hermite(const IntMatrix& M);

// Basis of ker(M) ∩ Z^cols, LLL-reduced, each vector with positive leading entry.
std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& M);

// Determinant of a square integer matrix (Bareiss, exact).
BigInt determinant(IntMatrix M);

// Gram determinant det(B B^T) of the rows of B.
BigInt gram_determinant(const std::vector<std::vector<std::int64_t>>& rows);

// Lattice-reduces the rows of B in place (LLL, delta = 0.99).
void lll_reduce(std::vector<std::vector<std::int64_t>>& rows);

std::int64_t to_int64_checked(const BigInt& x);

}  // namespace conehull
