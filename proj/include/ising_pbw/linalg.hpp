#pragma once

// Exact sparse row reduction over Q. Rows are kept as primitive integer
// vectors during elimination (fraction-free: a row is replaced by an integer
// combination and divided by its content), and converted back to rationals
// with pivot coefficient 1 only at the end.

#include <cstddef>
#include <utility>
#include <vector>

#include "ising_pbw/rational.hpp"

namespace ising_pbw {

/// (column, value) pairs, strictly increasing columns, no zero values.
using SparseRow = std::vector<std::pair<int, Rational>>;
using IntRow = std::vector<std::pair<int, Integer>>;

/// Primitive integer multiple of a rational row (positive leading entry).
IntRow to_primitive(const SparseRow& row);

/// Divides by the gcd of the entries and makes the leading entry positive.
void make_primitive(IntRow& row);

struct RrefResult {
  std::vector<SparseRow> rows;  // ordered by pivot column
  std::vector<int> pivot_columns;
};

/// Canonical reduced row-echelon form. Column 0 is the leftmost; the pivot of
/// a row is its smallest column index.
RrefResult rref(const std::vector<SparseRow>& rows, int ncols);

/// Pivot columns only (row echelon form without back-substitution).
std::vector<int> pivot_columns(const std::vector<SparseRow>& rows, int ncols);

/// Basis of {x : A x = 0} for A given by rows; each basis vector is indexed by
/// column and has a 1 in its free column.
std::vector<SparseRow> nullspace(const std::vector<SparseRow>& rows, int ncols);

}  // namespace ising_pbw
