#include "kstar/poisson.hpp"

#include <stdexcept>

namespace kstar {

MultiPoly poisson_bracket(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h,
                          std::span<const int> vars) {
  if (static_cast<int>(vars.size()) != g.dim())
    throw std::invalid_argument("poisson_bracket: variable block size != dim");
  RingPtr ring = f.ring();
  MultiPoly scale = g.scale_poly(ring);
  MultiPoly out(ring);
  for (const auto& [key, value] : g.table()) {
    auto [i, j, k] = key;
    MultiPoly xk = MultiPoly::variable(ring, vars[k]);
    // i<j keys, both orientations: c_ij^k (d_i f d_j h - d_j f d_i h).
    out += (Rational(1, 2) * value) *
           (xk * (f.derivative(vars[i]) * h.derivative(vars[j]) -
                  f.derivative(vars[j]) * h.derivative(vars[i])));
  }
  return scale * out;
}

MultiPoly adjoint_field(const LieAlgebra& g, int i, const MultiPoly& f,
                        std::span<const int> vars) {
  if (static_cast<int>(vars.size()) != g.dim())
    throw std::invalid_argument("adjoint_field: variable block size != dim");
  if (i < 0 || i >= g.dim()) throw std::invalid_argument("adjoint_field: index out of range");
  RingPtr ring = f.ring();
  MultiPoly scale = g.scale_poly(ring);
  MultiPoly out(ring);
  for (int j = 0; j < g.dim(); ++j) {
    for (int k = 0; k < g.dim(); ++k) {
      Rational c = g.c(i, j, k);
      if (c == 0) continue;
      out += c * (MultiPoly::variable(ring, vars[j]) * f.derivative(vars[k]));
    }
  }
  return scale * out;
}

bool invariant_check(const LieAlgebra& g, const MultiPoly& u, std::span<const int> vars) {
  for (int i = 0; i < g.dim(); ++i) {
    if (!poisson_bracket(g, MultiPoly::variable(u.ring(), vars[i]), u, vars).is_zero())
      return false;
  }
  return true;
}

}  // namespace kstar
