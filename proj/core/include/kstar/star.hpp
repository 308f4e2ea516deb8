#pragma once

#include <memory>
#include <mutex>

#include "kstar/cbh.hpp"
#include "kstar/duflo.hpp"
#include "kstar/envelope.hpp"
#include "kstar/graphs.hpp"
#include "kstar/linalg.hpp"
#include "kstar/poisson.hpp"
#include "kstar/records.hpp"

namespace kstar {

/// Everything the extended star-product needs at a fixed truncation
/// order: the algebra, the Duflo series, the assembled symbol A = Aw Ar,
/// and the scaled Campbell-Hausdorff jet Z_t, all built consistently at
/// the same order. Inputs and outputs of the product live on the x block
/// (plus t) of `blocks`. Copyable; the test-function cache is shared.
class StarContext {
public:
  StarContext(const LieAlgebra& g, int order, const TauMode& mode);

  const LieAlgebra& algebra() const { return g_; }
  int order() const { return order_; }
  const TauMode& tau_mode() const { return mode_; }
  const VarBlocks& blocks() const { return blocks_; }
  const DufloSeries& duflo() const { return duflo_; }
  const StarSymbol& symbol() const { return symbol_; }
  const CbhJet& zt() const { return zt_; }

  /// Parses a polynomial in the x1..xd (and t) variables.
  MultiPoly parse_input(const std::string& text) const;

  /// A^w_t * (phi_alpha o Z_t) for the monomial test function x^alpha,
  /// cached; the backbone of the integral formula.
  const MultiPoly& paired_test_function(const Mono& alpha) const;

private:
  LieAlgebra g_;
  int order_;
  TauMode mode_;
  VarBlocks blocks_;
  DufloSeries duflo_;
  StarSymbol symbol_;
  CbhJet zt_;

  struct Cache {
    std::mutex mutex;
    std::map<Mono, MultiPoly, GradedLexLess> g_alpha;
  };
  std::shared_ptr<Cache> cache_;
};

/// u *_t v on point-supported distributions by the integral formula
/// <u x v, A_t^w (phi o Z_t)> paired against all monomials phi of degree
/// <= deg u + deg v. Formal in t; bilinear; the t series terminates.
/// Requires deg u + deg v <= order (InsufficientTruncationOrder).
MultiPoly star(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v);

/// star with t evaluated at a rational value.
MultiPoly star_at(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v,
                  const Rational& t);

/// The same product computed by applying the full symbol A as a
/// bidifferential operator; equal to star() (pipeline equivalence).
MultiPoly star_via_symbol(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v);

/// (u * v) * w - u * (v * w), zero expected.
MultiPoly check_associativity(const StarContext& ctx, const MultiPoly& u,
                              const MultiPoly& v, const MultiPoly& w);

/// eta_t^{-1}(eta_t(u) *_{G_t} eta_t(v)) - (u tau_t *_t v tau_t) tau_t^{-1},
/// zero expected as a polynomial identity in t.
MultiPoly check_psiconnection(const StarContext& ctx, const MultiPoly& u,
                              const MultiPoly& v);

/// eta_t(u v) - eta_t(u) *_{G_t} eta_t(v) in U(g_t); zero expected for
/// invariant u, v (NotInvariant otherwise).
EnvelopingElement kv_check(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v);

/// C_n(u,v) = n! [t^n] (u *_t v), the n-th derivative of the product at
/// t = 0.
MultiPoly derivative_coefficient(const StarContext& ctx, int n, const MultiPoly& u,
                                 const MultiPoly& v);

/// M_n applied to (u,v): the n-th t-derivative at 0 of
/// u tau_t *_t v tau_t - (u v) tau_t, via the binomial expansion over
/// tau's Taylor components; zero expected on invariant pairs.
MultiPoly mn_operator(const StarContext& ctx, int n, const MultiPoly& u, const MultiPoly& v);

/// Fit of graph weights at order n: solves sum_Gamma w_Gamma sigma_Gamma
/// = sigma_n simultaneously over the sample algebras. The solution is an
/// affine set (weights of label-swapped graphs need not be pinned).
struct WeightFit {
  int n = 0;
  std::vector<AdmissibleGraph> graphs;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
};

WeightFit fit_graph_weights(int n, const std::vector<LieAlgebra>& samples, int order,
                            const TauMode& mode);

/// Residual report emitted by the check suites: empty residual = pass.
struct ResidualReport {
  std::string check;
  std::string algebra;
  std::string inputs;
  std::string residual;  // canonical polynomial text, "" when zero

  bool pass() const { return residual.empty(); }
  Record to_record() const;
};

}  // namespace kstar
