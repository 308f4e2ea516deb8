#pragma once

#include <span>

#include "kstar/lie.hpp"
#include "kstar/poly.hpp"

namespace kstar {

/// Linear Poisson bracket on g^*:
/// {f,h} = 1/2 c_ij^k x_k (d_i f)(d_j h), taken over the given variable
/// block (the S(g) coordinates inside f's ring). Bracket scale included.
MultiPoly poisson_bracket(const LieAlgebra& g, const MultiPoly& f, const MultiPoly& h,
                          std::span<const int> vars);

/// The adjoint vector field of the basis element e_i acting on functions
/// on g (variables = coordinates of a point of g):
/// (e_i . f)(X) = d/ds f(X + s[e_i, X]) = sum_{j,k} c_ij^k X_j d_k f.
/// This is the operator under which q, tau, r and the CBH coordinates are
/// invariant/covariant. Bracket scale included.
MultiPoly adjoint_field(const LieAlgebra& g, int i, const MultiPoly& f,
                        std::span<const int> vars);

/// True iff {x_i, u} = 0 for all i, i.e. u is annihilated by every
/// adjoint vector field on g^* (a polynomial-level invariant element).
bool invariant_check(const LieAlgebra& g, const MultiPoly& u, std::span<const int> vars);

}  // namespace kstar
