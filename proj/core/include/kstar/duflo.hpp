#pragma once

#include <string>
#include <vector>

#include "kstar/cbh.hpp"
#include "kstar/lie.hpp"
#include "kstar/series.hpp"

namespace kstar {

/// Wheel-weight mode for the series tau. The trivial mode (tau = 1) is
/// the default; explicit weights w_n exist so the tau-dependence of the
/// downstream identities can be exercised.
struct TauMode {
  bool trivial = true;
  std::vector<Rational> weights;  // weights[n-1] = w_n

  static TauMode trivial_mode() { return TauMode{}; }
  static TauMode with_weights(std::vector<Rational> w) {
    return TauMode{false, std::move(w)};
  }
  std::string key() const;
};

/// Ring layout for series on g: X block plus t.
VarBlocks duflo_blocks(int dim);
/// Ring layout for star-product symbols: X, Y, x blocks plus t.
VarBlocks star_blocks(int dim);

/// q(X) = det(sinh(ad X/2) / (ad X/2))^(1/2) as an exact jet of order N
/// over duflo_blocks. Even in X; identically 1 for 2-step nilpotent ad.
TruncSeries q_series(const LieAlgebra& g, int order);

/// tau(X) = exp(sum_n w_n/2^n tr((ad X)^n)), or 1 in trivial mode.
TruncSeries tau_series(const LieAlgebra& g, int order, const TauMode& mode);

/// r = q tau^(-1).
TruncSeries r_series(const LieAlgebra& g, int order, const TauMode& mode);

struct DufloSeries {
  TruncSeries q, tau, r;
  int order = 0;
  TauMode mode;
};

/// All three series at once, memoized per (algebra, order, mode).
DufloSeries duflo_series(const LieAlgebra& g, int order, const TauMode& mode);

/// Root factor A^r_t(X,Y) = exp(Z_t(X,Y) - X - Y), the exponent read as
/// the S(g)-valued polynomial sum_k (Z_t - X - Y)_k x_k. Over star_blocks.
TruncSeries symbol_Ar(const LieAlgebra& g, int order);

/// Wheel factor A^w_t(X,Y) = r(tX) r(tY) / r(Z(tX,tY)): scalar valued
/// (no x variables). Over star_blocks.
TruncSeries symbol_Aw(const LieAlgebra& g, int order, const TauMode& mode);

/// The assembled symbol A = Aw * Ar of the star-product.
struct StarSymbol {
  VarBlocks blocks;
  TruncSeries Aw, Ar, A;
  int order = 0;
};

StarSymbol star_symbol(const LieAlgebra& g, int order, const TauMode& mode);

/// sigma_n = n! [t^n] A, a polynomial in (X, Y, x).
MultiPoly sigma_n(const StarSymbol& symbol, int n);

}  // namespace kstar
