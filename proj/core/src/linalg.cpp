#include "kstar/linalg.hpp"

#include <stdexcept>

namespace kstar {

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> echelonize(Matrix& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int matrix_rank(Matrix a) { return static_cast<int>(echelonize(a).size()); }

LinearSolution solve_linear(const Matrix& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_linear: size mismatch");
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  Matrix aug = a;
  for (std::size_t i = 0; i < rows; ++i) {
    if (aug[i].size() != cols) throw std::invalid_argument("solve_linear: ragged matrix");
    aug[i].push_back(b[i]);
  }
  std::vector<int> pivots = echelonize(aug);

  LinearSolution sol;
  // Inconsistent iff some pivot lands in the augmented column.
  for (int p : pivots)
    if (p == static_cast<int>(cols)) return sol;
  sol.consistent = true;

  std::vector<int> pivot_of_col(cols, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_of_col[pivots[r]] = static_cast<int>(r);

  sol.particular.assign(cols, Rational(0));
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0) sol.particular[c] = aug[pivot_of_col[c]][cols];

  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[c] = 1;
    for (std::size_t cc = 0; cc < cols; ++cc)
      if (pivot_of_col[cc] >= 0) v[cc] = -aug[pivot_of_col[cc]][c];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

}  // namespace kstar
