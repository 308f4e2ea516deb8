#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kstar/poly.hpp"

namespace kstar {

/// One structure constant entry c_ij^k = value, 1-based indices.
struct StructEntry {
  int i, j, k;
  Rational value;
};

/// Global scale applied to every bracket: coef * t^tpow. scale_bracket
/// with a rational folds into coef; with the formal parameter it bumps
/// tpow, so identities in t stay exact polynomial identities.
struct BracketScale {
  Rational coef{1};
  unsigned tpow{0};

  bool is_one() const { return coef == 1 && tpow == 0; }
};

/// Finite dimensional Lie algebra over Q given by structure constants.
/// Immutable after validate(); constants are stored sparsely with i<j
/// keys and antisymmetric completion applied on read.
class LieAlgebra {
public:
  /// Zero-dimensional placeholder; every usable algebra comes from
  /// validate().
  LieAlgebra() = default;

  /// Checks antisymmetry consistency and the Jacobi identity. Throws
  /// AntisymmetryViolation / JacobiViolation with 1-based indices.
  static LieAlgebra validate(int dim, std::vector<std::string> basis_names,
                             const std::vector<StructEntry>& entries);

  int dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }

  /// c_ij^k without the bracket scale (0-based indices).
  Rational c(int i, int j, int k) const;
  const BracketScale& scale() const { return scale_; }
  bool is_abelian() const { return table_.empty() || scale_.coef == 0; }

  /// Sparse view of the i<j table (0-based), scale not applied.
  const std::map<std::array<int, 3>, Rational>& table() const { return table_; }

  /// The scale as an element of `ring` (which must contain "t" when the
  /// scale is formal).
  MultiPoly scale_poly(const RingPtr& ring) const;

  /// Content hash over (dim, names, table, scale); used as cache key.
  const std::string& fingerprint() const { return fingerprint_; }

  /// g_t for rational t: constants multiplied by t.
  LieAlgebra scaled(const Rational& t) const;
  /// g_t for formal t: every bracket picks up one power of t.
  LieAlgebra scaled_formal() const;

private:
  void refresh_fingerprint();

  int dim_ = 0;
  std::vector<std::string> names_;
  std::map<std::array<int, 3>, Rational> table_;  // keys {i,j,k}, i<j, 0-based
  BracketScale scale_;
  std::string fingerprint_;
};

/// Formal-or-rational bracket scaling parameter.
struct ScaleParam {
  bool formal = true;
  Rational value{1};

  static ScaleParam formal_t() { return ScaleParam{true, Rational(1)}; }
  static ScaleParam rational(Rational v) { return ScaleParam{false, std::move(v)}; }
};

/// [X,Y]_t = t [X,Y].
LieAlgebra scale_bracket(const LieAlgebra& g, const ScaleParam& t);

/// (ad X)_{kj} = sum_i x_i c_ij^k (scale included). X is a coefficient
/// vector of length dim over any ring; entries of the result are linear
/// in X's coordinates.
std::vector<std::vector<MultiPoly>> ad_matrix(const LieAlgebra& g,
                                              std::span<const MultiPoly> x);

/// [X,Y] as a coefficient vector (scale included).
std::vector<MultiPoly> bracket(const LieAlgebra& g, std::span<const MultiPoly> x,
                               std::span<const MultiPoly> y);

/// tr(ad X_1 ... ad X_k), multilinear in the arguments.
MultiPoly trace_ad_product(const LieAlgebra& g,
                           const std::vector<std::vector<MultiPoly>>& xs);

// Bundled algebras ------------------------------------------------------

LieAlgebra abelian_algebra(int dim);
/// Heisenberg h3: basis x,y,z with [x,y] = z.
LieAlgebra heisenberg_algebra();
/// sl2: basis h,e,f with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
LieAlgebra sl2_algebra();
/// The 2-dimensional non-abelian algebra: basis x,y with [x,y] = y.
LieAlgebra solvable2_algebra();
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Bundled algebra by name ("abelian2", "abelian3", "heisenberg", "sl2",
/// "solvable2"); throws ParseError for unknown names.
LieAlgebra bundled_algebra(const std::string& name);
std::vector<std::string> bundled_algebra_names();

// Algebra spec files ----------------------------------------------------
//
//   dim 3
//   basis h e f
//   1 2 2 2
//   1 3 3 -2
//   2 3 1 1
//
// Lines "i j k p/q" give c_ij^k with 1-based indices; '#' starts a
// comment. Absent entries are zero; the antisymmetric closure is implied.

LieAlgebra read_algebra(std::istream& in);
LieAlgebra read_algebra_file(const std::string& path);
void write_algebra(std::ostream& out, const LieAlgebra& g);

}  // namespace kstar
