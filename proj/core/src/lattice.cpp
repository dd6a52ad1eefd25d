#include "fsetkit/lattice.hpp"

#include <utility>

namespace fsetkit {

namespace {

// col_a <- col_a - f * col_b, in both H and U.
void col_axpy(ColumnEchelon& e, std::size_t a, std::size_t b, const BigInt& f) {
  for (auto& row : e.H) row[a] -= f * row[b];
  for (auto& row : e.U) row[a] -= f * row[b];
}

void col_swap(ColumnEchelon& e, std::size_t a, std::size_t b) {
  for (auto& row : e.H) std::swap(row[a], row[b]);
  for (auto& row : e.U) std::swap(row[a], row[b]);
}

void col_negate(ColumnEchelon& e, std::size_t a) {
  for (auto& row : e.H) row[a] = -row[a];
  for (auto& row : e.U) row[a] = -row[a];
}

// Rounded quotient so remainders stay small.
BigInt round_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  const BigInt r = a - q * b;
  if (2 * abs(r) > abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& A, std::size_t cols) {
  ColumnEchelon e;
  e.H = A;
  for (const auto& row : e.H)
    if (row.size() != cols) throw Mismatch("ragged integer matrix");
  e.U.assign(cols, IntVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) e.U[i][i] = 1;

  std::size_t k = 0;
  for (std::size_t r = 0; r < e.H.size() && k < cols; ++r) {
    // Euclid across columns k.. until a single nonzero remains in row r.
    while (true) {
      std::size_t best = cols;
      for (std::size_t c = k; c < cols; ++c) {
        if (e.H[r][c] != 0 && (best == cols || abs(e.H[r][c]) < abs(e.H[r][best]))) best = c;
      }
      if (best == cols) break;
      col_swap(e, k, best);
      bool done = true;
      for (std::size_t c = k + 1; c < cols; ++c) {
        if (e.H[r][c] == 0) continue;
        col_axpy(e, c, k, round_div(e.H[r][c], e.H[r][k]));
        if (e.H[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (e.H[r][k] == 0) continue;
    if (e.H[r][k] < 0) col_negate(e, k);
    // Reduce the entries left of the pivot into [0, pivot).
    for (std::size_t c = 0; c < k; ++c) {
      BigInt f = e.H[r][c] / e.H[r][k];
      if (e.H[r][c] - f * e.H[r][k] < 0) f -= 1;
      if (f != 0) col_axpy(e, c, k, f);
    }
    e.pivot_rows.push_back(r);
    ++k;
  }
  e.rank = k;
  return e;
}

std::optional<IntVector> solve_integer(const IntMatrix& A, std::size_t cols, const IntVector& b) {
  if (A.size() != b.size()) throw Mismatch("right-hand side length differs from the row count");
  const ColumnEchelon e = column_echelon(A, cols);
  IntVector y(cols, 0);
  std::size_t k = 0;
  for (std::size_t r = 0; r < A.size(); ++r) {
    BigInt rest = b[r];
    for (std::size_t j = 0; j < k; ++j) rest -= e.H[r][j] * y[j];
    if (k < e.rank && e.pivot_rows[k] == r) {
      if (rest % e.H[r][k] != 0) return std::nullopt;
      y[k] = rest / e.H[r][k];
      ++k;
    } else if (rest != 0) {
      return std::nullopt;
    }
  }
  IntVector x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < e.rank; ++j) x[i] += e.U[i][j] * y[j];
  return x;
}

std::vector<IntVector> integer_kernel(const IntMatrix& A, std::size_t cols) {
  const ColumnEchelon e = column_echelon(A, cols);
  std::vector<IntVector> out;
  for (std::size_t j = e.rank; j < cols; ++j) {
    IntVector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = e.U[i][j];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace fsetkit
