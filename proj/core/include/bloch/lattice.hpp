#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace bloch {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;
using QVec = std::vector<mpq_class>;

// In-place integer row echelon form over the first `ncols` columns using
// unimodular row operations. Returns the number of nonzero rows; those rows
// come first, pivots strictly increasing and positive.
std::size_t echelonize(ZMat& m, std::size_t ncols);

// Row Hermite normal form of the lattice spanned by the rows of `a`.
ZMat hermite_rows(ZMat a, std::size_t ncols);

// Pivot column of each row of an echelon matrix.
std::vector<std::size_t> pivot_columns(const ZMat& echelon, std::size_t ncols);

// Integer basis of { x in Z^ncols : a x = 0 }.
ZMat integer_kernel(const ZMat& a, std::size_t ncols);

// Basis of (Q-span of rows of a) intersected with Z^ncols.
ZMat saturate(const ZMat& a, std::size_t ncols);

std::size_t rational_rank(const ZMat& a, std::size_t ncols);

mpz_class content(const ZVec& v);
ZVec primitive(const ZVec& v);

// Solves x * basis = target over Q (basis rows independent). Returns false if
// target is outside the row span.
bool solve_in_row_span(const ZMat& basis, const ZVec& target, QVec& x);

}  // namespace bloch
