#pragma once

#include <map>
#include <span>

#include "kstar/lie.hpp"
#include "kstar/series.hpp"

namespace kstar {

/// Element of U(g) in PBW normal form: a map from normal monomials
/// (exponent vectors over the ordered basis) to coefficients in Q[t].
/// The t dependence carries the formal bracket scale of g_t.
class EnvelopingElement {
public:
  using TermMap = std::map<Mono, MultiPoly, GradedLexLess>;

  explicit EnvelopingElement(const LieAlgebra& g);
  static EnvelopingElement zero(const LieAlgebra& g);
  static EnvelopingElement unit(const LieAlgebra& g);
  static EnvelopingElement generator(const LieAlgebra& g, int i);
  static EnvelopingElement monomial(const LieAlgebra& g, const Mono& m, MultiPoly coeff);

  const LieAlgebra& algebra() const { return algebra_; }
  /// Coefficient ring, Q[t].
  const RingPtr& coeff_ring() const { return tring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Top filtration degree, -1 for zero.
  int degree() const;

  bool operator==(const EnvelopingElement& other) const;
  bool operator!=(const EnvelopingElement& other) const { return !(*this == other); }

  EnvelopingElement operator-() const;
  EnvelopingElement& operator+=(const EnvelopingElement& other);
  EnvelopingElement& operator-=(const EnvelopingElement& other);
  friend EnvelopingElement operator+(EnvelopingElement a, const EnvelopingElement& b) {
    return a += b;
  }
  friend EnvelopingElement operator-(EnvelopingElement a, const EnvelopingElement& b) {
    return a -= b;
  }

  void add_term(const Mono& m, const MultiPoly& coeff);
  void scale_coeffs(const MultiPoly& factor);

  /// Canonical text: "c * h^2 e f" terms with basis names, normal order.
  std::string to_string() const;

private:
  LieAlgebra algebra_;
  RingPtr tring_;
  TermMap terms_;
};

/// Convolution product of U(g): PBW straightening of the concatenated
/// words, e_j e_i = e_i e_j + [e_j, e_i] for j > i. Straightening results
/// are memoized per algebra.
EnvelopingElement ug_multiply(const EnvelopingElement& a, const EnvelopingElement& b);

/// Symmetrization S(g) -> U(g): a monomial of degree k maps to the
/// average of the k! orderings of its letters. Coincides with exp_* on
/// point-supported distributions. p lives on the x_vars block of its
/// ring; a "t" variable in p's ring carries over to the coefficients.
EnvelopingElement beta_symmetrize(const LieAlgebra& g, const MultiPoly& p,
                                  std::span<const int> x_vars);

/// eta(u) = beta(u . q) with q the Duflo series of g at the given order
/// (order >= deg u required). For g with a formal bracket scale this is
/// the family eta_t, with coefficients polynomial in t.
EnvelopingElement eta(const LieAlgebra& g, const MultiPoly& u, std::span<const int> x_vars,
                      int order);

/// Two-sided inverse of eta in filtration degrees <= order, by triangular
/// descent. The result lives on the x_vars block of result_ring.
MultiPoly eta_inverse(const EnvelopingElement& a, const RingPtr& result_ring,
                      std::span<const int> x_vars, int order);

}  // namespace kstar
