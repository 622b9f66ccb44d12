#pragma once

#include <vector>

#include "splicekit/matrix.hpp"

namespace splicekit {

// Fraction-free (Bareiss) elimination with row pivoting.
BigInt bareiss_determinant(IntegerMatrix m);

// k-th entry is the determinant of the top-left (k+1)x(k+1) block.
std::vector<BigInt> leading_principal_minors(const IntegerMatrix& m);

// Bareiss without pivoting; every pivot is a leading principal minor.
bool is_positive_definite(const IntegerMatrix& m);

// Exact inverse over Q. Throws degenerate_matrix when singular.
RationalMatrix inverse(const IntegerMatrix& m);
RationalMatrix inverse(const RationalMatrix& m);

IntegerMatrix adjugate(const IntegerMatrix& m);

// Rank over Q.
std::size_t rank(const RationalMatrix& m);

struct SmithDecomposition {
  std::vector<BigInt> diagonal;  // non-negative, d_1 | d_2 | ...
  IntegerMatrix left;            // U
  IntegerMatrix right;           // V, with U * M * V = diag
};

SmithDecomposition smith_normal_form(const IntegerMatrix& m);

}  // namespace splicekit
