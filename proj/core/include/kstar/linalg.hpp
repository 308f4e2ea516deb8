#pragma once

#include <vector>

#include "kstar/rational.hpp"

namespace kstar {

using Matrix = std::vector<std::vector<Rational>>;

/// Rank by fraction-free-ish Gaussian elimination (exact).
int matrix_rank(Matrix a);

/// General solution of A x = b over Q.
struct LinearSolution {
  bool consistent = false;
  std::vector<Rational> particular;               // empty unless consistent
  std::vector<std::vector<Rational>> nullspace;   // basis of ker A
};

LinearSolution solve_linear(const Matrix& a, const std::vector<Rational>& b);

}  // namespace kstar
