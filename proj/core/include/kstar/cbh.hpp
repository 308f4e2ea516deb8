#pragma once

#include <filesystem>
#include <optional>

#include "kstar/lie.hpp"
#include "kstar/series.hpp"

namespace kstar {

/// Exact jet of the Campbell-Hausdorff series Z(X,Y) valued in g:
/// d coordinate polynomials in the X and Y blocks (plus t when the
/// algebra carries a formal scale or the jet is the scaled family Z_t),
/// truncated at total degree `order` in (X,Y).
struct CbhJet {
  LieAlgebra algebra;
  int order = 0;
  VarBlocks blocks;              // X, Y, t
  std::vector<TruncSeries> z;    // coordinates of Z
};

/// Z(X,Y) through total degree `order`, computed by the Dynkin series:
/// for every word w over {X,Y} with 1 <= |w| <= order, the right-nested
/// bracket of w (memoized over suffixes) weighted by the composition sum
///   sum over splittings w = X^{r_1} Y^{s_1} ... X^{r_n} Y^{s_n}
///   of (-1)^{n-1} / (n |w| prod r_i! s_i!).
/// Results are memoized per (algebra fingerprint, order).
CbhJet bch(const LieAlgebra& g, int order);

/// The scaled family Z_t(X,Y) = t^{-1} Z(tX, tY): the degree-k slice of
/// bch(g, order) reweighted by t^(k-1). Requires an unscaled algebra;
/// the returned jet's algebra is g with a formal bracket scale.
CbhJet bch_scaled(const LieAlgebra& g, int order);

/// phi(Z): substitutes the jet's coordinates into a polynomial over the
/// X block of `phi_blocks`, truncating at the jet order.
MultiPoly compose_with_jet(const MultiPoly& phi, std::span<const int> phi_vars,
                           const CbhJet& jet);

// Disk cache --------------------------------------------------------------
// One plain-text file per (algebra fingerprint, order) under a caller
// supplied directory.

std::filesystem::path cbh_cache_path(const std::filesystem::path& dir,
                                     const LieAlgebra& g, int order);
void cbh_cache_store(const std::filesystem::path& dir, const CbhJet& jet);
std::optional<CbhJet> cbh_cache_load(const std::filesystem::path& dir,
                                     const LieAlgebra& g, int order);
/// Loads from `dir` when present, otherwise computes and stores.
CbhJet bch_cached(const LieAlgebra& g, int order, const std::filesystem::path& dir);

}  // namespace kstar
