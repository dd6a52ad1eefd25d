#pragma once

// Integer linear algebra on small dense matrices: column Hermite reduction
// with its unimodular transform, and exact solving of A x = b over Z.

#include <optional>
#include <vector>

#include "fsetkit/group.hpp"

namespace fsetkit {

using IntVector = std::vector<BigInt>;

struct ColumnEchelon {
  IntMatrix H;  // A * U, lower column echelon
  IntMatrix U;  // unimodular, cols x cols
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot_rows[k] is the row of the k-th pivot
};

ColumnEchelon column_echelon(const IntMatrix& A, std::size_t cols);

// Some integer solution of A x = b, or empty when none exists. The free
// coordinates in the echelon basis are set to zero.
std::optional<IntVector> solve_integer(const IntMatrix& A, std::size_t cols, const IntVector& b);

// Basis of {x in Z^cols : A x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& A, std::size_t cols);

}  // namespace fsetkit
