#include "kstar/star.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

namespace {

// Enumerates exponent vectors of length dim with total degree <= cap.
void for_each_multi_index(int dim, int cap, const std::function<void(const Mono&)>& fn) {
  Mono alpha(dim, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == dim - 1) {
      for (int e = 0; e <= left; ++e) {
        alpha[pos] = static_cast<std::uint8_t>(e);
        fn(alpha);
      }
      alpha[pos] = 0;
      return;
    }
    for (int e = 0; e <= left; ++e) {
      alpha[pos] = static_cast<std::uint8_t>(e);
      self(self, pos + 1, left - e);
    }
    alpha[pos] = 0;
  };
  if (dim == 0) {
    fn(alpha);
    return;
  }
  rec(rec, 0, cap);
}

// Requires p to live on the x block (plus t) of the context ring.
void check_input(const StarContext& ctx, const MultiPoly& p, const char* who) {
  const VarBlocks& b = ctx.blocks();
  if (!p.ring()->same(*b.ring))
    throw std::invalid_argument(std::string(who) + ": input over wrong ring");
  std::vector<char> allowed(b.ring->size(), 0);
  for (int v : b.s) allowed[v] = 1;
  if (b.t >= 0) allowed[b.t] = 1;
  for (const auto& [m, c] : p.terms())
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v] && !allowed[v])
        throw std::invalid_argument(std::string(who) +
                                    ": input uses non-S(g) variable " + b.ring->name(v));
}

}  // namespace

StarContext::StarContext(const LieAlgebra& g, int order, const TauMode& mode)
    : g_(g),
      order_(order),
      mode_(mode),
      blocks_(star_blocks(g.dim())),
      duflo_(duflo_series(g, order, mode)),
      symbol_(star_symbol(g, order, mode)),
      zt_(bch_scaled(g, order)),
      cache_(std::make_shared<Cache>()) {
  if (order < 1) throw std::invalid_argument("star context: order must be >= 1");
  if (!g.scale().is_one())
    throw std::invalid_argument("star context: pass the unscaled algebra; t is internal");
}

MultiPoly StarContext::parse_input(const std::string& text) const {
  MultiPoly p = MultiPoly::parse(blocks_.ring, text);
  check_input(*this, p, "parse_input");
  return p;
}

const MultiPoly& StarContext::paired_test_function(const Mono& alpha) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->g_alpha.find(alpha);
  if (it != cache_->g_alpha.end()) return it->second;

  // phi_alpha o Z_t built up one coordinate factor at a time, reusing the
  // cached predecessor.
  MultiPoly composed(blocks_.ring);
  if (total_degree(alpha) == 0) {
    composed = MultiPoly::constant(blocks_.ring, Rational(1));
  } else {
    Mono prev = alpha;
    int k = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] > 0) {
        k = static_cast<int>(i);
        break;
      }
    prev[k] -= 1;
    MultiPoly base(blocks_.ring);
    {
      auto pit = cache_->g_alpha.find(prev);
      if (pit != cache_->g_alpha.end()) {
        base = pit->second;
      } else {
        // Recurse without re-locking: compute phi_prev o Z_t directly.
        base = MultiPoly::constant(blocks_.ring, Rational(1));
        for (std::size_t i = 0; i < prev.size(); ++i)
          for (int r = 0; r < prev[i]; ++r)
            base = MultiPoly::mul(base, zt_.z[i].poly().embedded(blocks_.ring), order_);
        base = MultiPoly::mul(symbol_.Aw.poly(), base, order_);
        cache_->g_alpha.emplace(prev, base);
      }
    }
    // base already contains the Aw factor; divide/multiply bookkeeping is
    // avoided by caching phi o Z_t *with* the Aw factor and multiplying
    // one more Z coordinate in.
    composed = MultiPoly::mul(base, zt_.z[k].poly().embedded(blocks_.ring), order_);
    return cache_->g_alpha.emplace(alpha, std::move(composed)).first->second;
  }
  composed = MultiPoly::mul(symbol_.Aw.poly(), composed, order_);
  return cache_->g_alpha.emplace(alpha, std::move(composed)).first->second;
}

MultiPoly star(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v) {
  check_input(ctx, u, "star");
  check_input(ctx, v, "star");
  const VarBlocks& b = ctx.blocks();
  int du = u.degree_in(b.s), dv = v.degree_in(b.s);
  if (du < 0 || dv < 0) return MultiPoly(b.ring);  // zero input
  int cap = du + dv;
  if (cap > ctx.order())
    throw InsufficientTruncationOrder("star: deg u + deg v = " + std::to_string(cap) +
                                      " exceeds order " + std::to_string(ctx.order()));

  MultiPoly result(b.ring);
  for_each_multi_index(b.dim, cap, [&](const Mono& alpha) {
    const MultiPoly& G = ctx.paired_test_function(alpha);
    // m_alpha = <u x v, G> in Q[t].
    MultiPoly moment(b.ring);
    for (const auto& [mu, cu] : u.terms()) {
      for (const auto& [mv, cv] : v.terms()) {
        // Target X^beta Y^gamma with beta, gamma the x exponents of u, v.
        Mono target(b.ring->size(), 0);
        Rational fact(1);
        int tshift = mu[b.t] + mv[b.t];
        for (int i = 0; i < b.dim; ++i) {
          target[b.X[i]] = mu[b.s[i]];
          target[b.Y[i]] = mv[b.s[i]];
          fact *= factorial(mu[b.s[i]]) * factorial(mv[b.s[i]]);
        }
        // Collect all t powers of G at this (X,Y) monomial; the t degree
        // of G is bounded by its (X,Y) degree, hence by the order.
        for (int e = 0; e <= ctx.order(); ++e) {
          target[b.t] = static_cast<std::uint8_t>(e);
          Rational c = G.coefficient(target);
          if (c == 0) continue;
          Mono tm(b.ring->size(), 0);
          tm[b.t] = static_cast<std::uint8_t>(e + tshift);
          moment.add_term(tm, cu * cv * fact * c);
        }
      }
    }
    if (moment.is_zero()) return;
    // w += x^alpha / alpha! * m_alpha
    Mono xm(b.ring->size(), 0);
    for (int i = 0; i < b.dim; ++i) xm[b.s[i]] = alpha[i];
    result += MultiPoly::mul(moment, MultiPoly::monomial(b.ring, xm, Rational(1)), -1) *
              (Rational(1) / multi_factorial(alpha));
  });
  return result;
}

MultiPoly star_at(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v,
                  const Rational& t) {
  MultiPoly formal = star(ctx, u, v);
  const VarBlocks& b = ctx.blocks();
  std::vector<std::optional<MultiPoly>> images(b.ring->size());
  images[b.t] = MultiPoly::constant(b.ring, t);
  return formal.substituted(b.ring, images, -1);
}

MultiPoly star_via_symbol(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v) {
  check_input(ctx, u, "star_via_symbol");
  check_input(ctx, v, "star_via_symbol");
  return apply_symbol(ctx.symbol().A.poly(), u, v, ctx.blocks());
}

MultiPoly check_associativity(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v,
                              const MultiPoly& w) {
  MultiPoly left = star(ctx, star(ctx, u, v), w);
  MultiPoly right = star(ctx, u, star(ctx, v, w));
  return left - right;
}

namespace {

// tau_t(X) = tau(tX) over the context ring.
TruncSeries tau_scaled(const StarContext& ctx) {
  const VarBlocks& b = ctx.blocks();
  VarBlocks db = duflo_blocks(b.dim);
  MultiPoly t = MultiPoly::variable(b.ring, b.t);
  std::vector<std::optional<MultiPoly>> slots(db.ring->size());
  for (int i = 0; i < b.dim; ++i)
    slots[db.X[i]] = t * MultiPoly::variable(b.ring, b.X[i]);
  return TruncSeries(ctx.duflo().tau.poly().substituted(b.ring, slots, ctx.order()),
                     ctx.order());
}

}  // namespace

MultiPoly check_psiconnection(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v) {
  check_input(ctx, u, "check_psiconnection");
  check_input(ctx, v, "check_psiconnection");
  const VarBlocks& b = ctx.blocks();
  LieAlgebra gt = ctx.algebra().scaled_formal();

  // Group side.
  EnvelopingElement left_u = eta(gt, u, b.s, ctx.order());
  EnvelopingElement left_v = eta(gt, v, b.s, ctx.order());
  MultiPoly lhs = eta_inverse(ug_multiply(left_u, left_v), b.ring, b.s, ctx.order());

  // Star side.
  TruncSeries tau_t = tau_scaled(ctx);
  MultiPoly ut = distribution_times_function(u, b.s, tau_t, b.Xs());
  MultiPoly vt = distribution_times_function(v, b.s, tau_t, b.Xs());
  MultiPoly prod = star(ctx, ut, vt);
  MultiPoly rhs = distribution_times_function(prod, b.s, series_inverse(tau_t), b.Xs());

  return lhs - rhs;
}

EnvelopingElement kv_check(const StarContext& ctx, const MultiPoly& u, const MultiPoly& v) {
  check_input(ctx, u, "kv_check");
  check_input(ctx, v, "kv_check");
  const VarBlocks& b = ctx.blocks();
  if (!invariant_check(ctx.algebra(), u, b.s))
    throw NotInvariant("kv_check: first argument is not invariant");
  if (!invariant_check(ctx.algebra(), v, b.s))
    throw NotInvariant("kv_check: second argument is not invariant");
  LieAlgebra gt = ctx.algebra().scaled_formal();
  EnvelopingElement lhs = eta(gt, u * v, b.s, ctx.order());
  EnvelopingElement rhs = ug_multiply(eta(gt, u, b.s, ctx.order()),
                                      eta(gt, v, b.s, ctx.order()));
  return lhs - rhs;
}

MultiPoly derivative_coefficient(const StarContext& ctx, int n, const MultiPoly& u,
                                 const MultiPoly& v) {
  if (n < 0 || n > ctx.order())
    throw std::invalid_argument("derivative_coefficient: n out of range");
  MultiPoly prod = star(ctx, u, v);
  MultiPoly slice = prod.coefficient_of(ctx.blocks().t, n);
  slice *= factorial(static_cast<unsigned>(n));
  return slice;
}

MultiPoly mn_operator(const StarContext& ctx, int n, const MultiPoly& u, const MultiPoly& v) {
  check_input(ctx, u, "mn_operator");
  check_input(ctx, v, "mn_operator");
  if (n < 0 || n > ctx.order()) throw std::invalid_argument("mn_operator: n out of range");
  const VarBlocks& b = ctx.blocks();
  VarBlocks db = duflo_blocks(b.dim);

  // tau_(p) = p! (degree-p Taylor component of tau), as a series for the
  // distribution action.
  auto tau_component = [&](int p) {
    MultiPoly slice = ctx.duflo().tau.poly().weighted_slice(p);
    slice *= factorial(static_cast<unsigned>(p));
    return TruncSeries(std::move(slice), ctx.order());
  };

  MultiPoly total(b.ring);
  Rational nfact = factorial(static_cast<unsigned>(n));
  for (int p = 0; p <= n; ++p) {
    TruncSeries tp = tau_component(p);
    if (tp.is_zero()) continue;
    MultiPoly up = distribution_times_function(u, b.s, tp, db.Xs());
    if (up.is_zero()) continue;
    for (int q = 0; p + q <= n; ++q) {
      TruncSeries tq = tau_component(q);
      if (tq.is_zero()) continue;
      MultiPoly vq = distribution_times_function(v, b.s, tq, db.Xs());
      if (vq.is_zero()) continue;
      int r = n - p - q;
      MultiPoly br = derivative_coefficient(ctx, r, up, vq);
      if (br.is_zero()) continue;
      Rational coeff = nfact / (factorial(static_cast<unsigned>(p)) *
                                factorial(static_cast<unsigned>(q)) *
                                factorial(static_cast<unsigned>(r)));
      total += coeff * br;
    }
  }
  MultiPoly uv = u * v;
  total -= distribution_times_function(uv, b.s, tau_component(n), db.Xs());
  return total;
}

WeightFit fit_graph_weights(int n, const std::vector<LieAlgebra>& samples, int order,
                            const TauMode& mode) {
  if (n < 0 || n > 2)
    throw std::invalid_argument("fit_graph_weights: n capped at 2");
  if (samples.empty()) throw std::invalid_argument("fit_graph_weights: need sample algebras");
  WeightFit fit;
  fit.n = n;
  fit.graphs = enumerate_graphs(n, 2, /*relevant_only=*/true);

  Matrix rows;
  std::vector<Rational> rhs;
  for (const auto& g : samples) {
    VarBlocks sb = star_blocks(g.dim());
    StarSymbol sym = star_symbol(g, order, mode);
    MultiPoly target = sigma_n(sym, n);
    std::vector<MultiPoly> sigmas;
    sigmas.reserve(fit.graphs.size());
    for (const auto& graph : fit.graphs) sigmas.push_back(graph_symbol(graph, g, sb));

    std::set<Mono, GradedLexLess> monomials;
    for (const auto& [m, c] : target.terms()) monomials.insert(m);
    for (const auto& s : sigmas)
      for (const auto& [m, c] : s.terms()) monomials.insert(m);
    for (const auto& m : monomials) {
      std::vector<Rational> row;
      row.reserve(sigmas.size());
      for (const auto& s : sigmas) row.push_back(s.coefficient(m));
      rows.push_back(std::move(row));
      rhs.push_back(target.coefficient(m));
    }
  }
  if (rows.empty()) {
    // All symbols and the target vanish (abelian samples): every weight
    // vector solves the system.
    rows.emplace_back(fit.graphs.size(), Rational(0));
    rhs.emplace_back(0);
  }
  LinearSolution sol = solve_linear(rows, rhs);
  if (!sol.consistent)
    throw InconsistentSystem("fit_graph_weights: sigma_n is not in the span of the graph "
                             "symbols (normalization bug)");
  fit.particular = std::move(sol.particular);
  fit.nullspace = std::move(sol.nullspace);
  return fit;
}

Record ResidualReport::to_record() const {
  return Record{{"check", check},
                {"algebra", algebra},
                {"inputs", inputs},
                {"residual", residual},
                {"status", pass() ? "pass" : "fail"}};
}

}  // namespace kstar
