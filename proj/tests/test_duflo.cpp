#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kstar/duflo.hpp"
#include "kstar/poisson.hpp"

using namespace kstar;

namespace {

std::vector<LieAlgebra> bundled() {
  return {abelian_algebra(2), heisenberg_algebra(), sl2_algebra(), solvable2_algebra()};
}

MultiPoly substitute_t(const MultiPoly& p, const VarBlocks& b, const Rational& value) {
  std::vector<std::optional<MultiPoly>> images(b.ring->size());
  images[b.t] = MultiPoly::constant(b.ring, value);
  return p.substituted(b.ring, images, -1);
}

}  // namespace

TEST_CASE("q is 1 on abelian and Heisenberg") {
  for (const auto& g : {abelian_algebra(3), heisenberg_algebra()}) {
    TruncSeries q = q_series(g, 6);
    CHECK(q.poly() == MultiPoly::constant(q.ring(), Rational(1)));
  }
}

TEST_CASE("q on sl2 matches the closed form in the Killing invariant") {
  // Eigenvalues of ad X are 0, +-2s^(1/2) with s = X1^2 + X2 X3, so
  // q = sinh(s^(1/2))/s^(1/2) = 1 + s/6 + s^2/120 through degree 4.
  TruncSeries q = q_series(sl2_algebra(), 4);
  MultiPoly s = MultiPoly::parse(q.ring(), "X1^2 + X2 X3");
  MultiPoly expected = MultiPoly::constant(q.ring(), Rational(1)) + Rational(1, 6) * s +
                       Rational(1, 120) * (s * s);
  CHECK(q.poly() == expected);
}

TEST_CASE("q on sl2 matches an independent truncated matrix-series oracle") {
  // Oracle: cofactor determinant of I + M^2/24 + M^4/1920 with the ad
  // matrix written out by hand from the bracket table, then the binomial
  // square root (1+u)^(1/2) = 1 + u/2 - u^2/8 + ...
  VarBlocks b = duflo_blocks(3);
  RingPtr ring = b.ring;
  auto X = [&](int i) { return MultiPoly::variable(ring, b.X[i]); };
  // ad X columns: [X,h] = -2b e + 2c f, [X,e] = -c h + 2a e, [X,f] = b h - 2a f
  // for X = a h + b e + c f.
  std::vector<std::vector<MultiPoly>> m(3, std::vector<MultiPoly>(3, MultiPoly(ring)));
  m[1][0] = Rational(-2) * X(1);
  m[2][0] = Rational(2) * X(2);
  m[0][1] = -X(2);
  m[1][1] = Rational(2) * X(0);
  m[0][2] = X(1);
  m[2][2] = Rational(-2) * X(0);

  int order = 4;
  auto mat_mul = [&](const auto& p, const auto& q) {
    std::vector<std::vector<MultiPoly>> r(3, std::vector<MultiPoly>(3, MultiPoly(ring)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r[i][j] += p[i][k] * q[k][j];
    return r;
  };
  auto m2 = mat_mul(m, m);
  auto m4 = mat_mul(m2, m2);
  std::vector<std::vector<MultiPoly>> ratio(3, std::vector<MultiPoly>(3, MultiPoly(ring)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ratio[i][j] = Rational(1, 24) * m2[i][j] + Rational(1, 1920) * m4[i][j];
      if (i == j) ratio[i][j] += MultiPoly::constant(ring, Rational(1));
    }
  // det by explicit cofactors.
  auto det3 = [&](const auto& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  MultiPoly det = det3(ratio).truncated(order);
  MultiPoly u = det - MultiPoly::constant(ring, Rational(1));
  MultiPoly root = MultiPoly::constant(ring, Rational(1)) + Rational(1, 2) * u -
                   Rational(1, 8) * (u * u);
  root = root.truncated(order);

  CHECK(q_series(sl2_algebra(), order).poly() == root);
}

TEST_CASE("q is even on every bundled algebra") {
  for (const auto& g : bundled()) {
    TruncSeries q = q_series(g, 5);
    for (const auto& [m, c] : q.poly().terms()) CHECK(total_degree(m) % 2 == 0);
  }
}

TEST_CASE("q, tau, r are invariant under the adjoint fields") {
  TauMode weights = TauMode::with_weights({Rational(1, 3), Rational(-2, 7), Rational(5)});
  for (const auto& g : bundled()) {
    VarBlocks b = duflo_blocks(g.dim());
    DufloSeries ds = duflo_series(g, 5, weights);
    for (int i = 0; i < g.dim(); ++i) {
      CHECK(adjoint_field(g, i, ds.q.poly(), b.Xs()).truncated(4).is_zero());
      CHECK(adjoint_field(g, i, ds.tau.poly(), b.Xs()).truncated(4).is_zero());
      CHECK(adjoint_field(g, i, ds.r.poly(), b.Xs()).truncated(4).is_zero());
    }
  }
}

TEST_CASE("tau modes") {
  // Trivial mode is 1; so is any mode on algebras with vanishing traces.
  CHECK(tau_series(sl2_algebra(), 5, TauMode::trivial_mode()).poly() ==
        MultiPoly::constant(duflo_blocks(3).ring, Rational(1)));
  TauMode weights = TauMode::with_weights({Rational(2), Rational(1, 2)});
  for (const auto& g : {abelian_algebra(3), heisenberg_algebra()}) {
    CHECK(tau_series(g, 5, weights).poly() ==
          MultiPoly::constant(duflo_blocks(3).ring, Rational(1)));
  }
  // Non-unimodular solvable algebra: w_1 contributes through tr(ad X).
  LieAlgebra s2 = solvable2_algebra();
  TruncSeries tau = tau_series(s2, 3, TauMode::with_weights({Rational(1)}));
  // tr(ad X) = X1, so tau = exp(X1/2).
  VarBlocks b = duflo_blocks(2);
  MultiPoly expected = MultiPoly::parse(b.ring, "1 + 1/2 X1 + 1/8 X1^2 + 1/48 X1^3");
  CHECK(tau.poly() == expected);
  // r = q tau^{-1} exactly.
  DufloSeries ds = duflo_series(s2, 3, TauMode::with_weights({Rational(1)}));
  CHECK((ds.r * ds.tau) == ds.q);
  CHECK(ds.q.poly().constant_term() == Rational(1));
  CHECK(ds.tau.poly().constant_term() == Rational(1));
  CHECK(ds.r.poly().constant_term() == Rational(1));
}

TEST_CASE("Ar on the Heisenberg algebra has the central closed form") {
  // Z_t - X - Y = t/2 [X,Y] with [X,Y] central, so
  // Ar = exp(t/2 (X1 Y2 - X2 Y1) x3) summed explicitly.
  LieAlgebra g = heisenberg_algebra();
  int order = 6;
  TruncSeries ar = symbol_Ar(g, order);
  VarBlocks b = star_blocks(3);
  MultiPoly w = MultiPoly::parse(b.ring, "1/2 t X1 Y2 x3 - 1/2 t X2 Y1 x3");
  MultiPoly expected(b.ring);
  MultiPoly power = MultiPoly::constant(b.ring, Rational(1));
  for (int k = 0; 2 * k <= order; ++k) {
    if (k > 0) power = MultiPoly::mul(power, w, order);
    expected += (Rational(1) / factorial(k)) * power;
  }
  CHECK(ar.poly() == expected);
}

TEST_CASE("Ar is 1 on abelian and at t = 0") {
  TruncSeries ar = symbol_Ar(abelian_algebra(2), 4);
  CHECK(ar.poly() == MultiPoly::constant(ar.ring(), Rational(1)));
  TruncSeries ar_sl2 = symbol_Ar(sl2_algebra(), 4);
  VarBlocks b = star_blocks(3);
  CHECK(substitute_t(ar_sl2.poly(), b, Rational(0)) ==
        MultiPoly::constant(b.ring, Rational(1)));
}

TEST_CASE("Aw is scalar valued and 1 when r is 1") {
  for (const auto& g : {abelian_algebra(3), heisenberg_algebra()}) {
    TruncSeries aw = symbol_Aw(g, 5, TauMode::trivial_mode());
    CHECK(aw.poly() == MultiPoly::constant(aw.ring(), Rational(1)));
  }
  TruncSeries aw = symbol_Aw(sl2_algebra(), 5, TauMode::trivial_mode());
  VarBlocks b = star_blocks(3);
  for (const auto& [m, c] : aw.poly().terms())
    for (int i = 0; i < 3; ++i) CHECK(m[b.s[i]] == 0);
  CHECK_FALSE(aw.poly() == MultiPoly::constant(b.ring, Rational(1)));
}

TEST_CASE("Aw order-2 coefficient on sl2 against an independent composition") {
  // Independent route: Aw = exp(L(tX) + L(tY) - L(Z(tX,tY))) with
  // L = log q computed by hand through degree 2 in each argument:
  // L(V) = s(V)/6 with s = V1^2 + V2 V3 (plus degree-4 terms that cannot
  // contribute to t^2). At order t^2 only the bilinear part survives:
  // [t^2] Aw = (s(X) + s(Y) - s(X+Y))/6 = -(2 X1 Y1 + X2 Y3 + X3 Y2)/6.
  TruncSeries aw = symbol_Aw(sl2_algebra(), 4, TauMode::trivial_mode());
  VarBlocks b = star_blocks(3);
  MultiPoly t2 = aw.poly().coefficient_of(b.t, 2);
  MultiPoly expected =
      MultiPoly::parse(b.ring, "-1/3 X1 Y1 - 1/6 X2 Y3 - 1/6 X3 Y2");
  CHECK(t2 == expected);
  // There is no t-linear part: r is even, so the linear terms cancel.
  CHECK(aw.poly().coefficient_of(b.t, 1).is_zero());
}

TEST_CASE("A factorizes as Aw * Ar with A|_{t=0} = 1") {
  for (const auto& g : bundled()) {
    StarSymbol sym = star_symbol(g, 4, TauMode::trivial_mode());
    CHECK(sym.A == sym.Aw * sym.Ar);
    CHECK(substitute_t(sym.A.poly(), sym.blocks, Rational(0)) ==
          MultiPoly::constant(sym.blocks.ring, Rational(1)));
    // Aw carries no S(g) part.
    for (const auto& [m, c] : sym.Aw.poly().terms())
      for (int i = 0; i < g.dim(); ++i) CHECK(m[sym.blocks.s[i]] == 0);
  }
}

TEST_CASE("2-step nilpotent ad with trivial tau gives A = Ar") {
  StarSymbol sym = star_symbol(heisenberg_algebra(), 6, TauMode::trivial_mode());
  CHECK(sym.A == sym.Ar);
}

TEST_CASE("sigma_n examples") {
  LieAlgebra g = sl2_algebra();
  StarSymbol sym = star_symbol(g, 4, TauMode::trivial_mode());
  VarBlocks b = sym.blocks;
  CHECK(sigma_n(sym, 0) == MultiPoly::constant(b.ring, Rational(1)));
  // sigma_1 = [X,Y]/2 as an S(g) element; the scalar part vanishes.
  std::vector<MultiPoly> xs, ys;
  for (int i = 0; i < 3; ++i) {
    xs.push_back(MultiPoly::variable(b.ring, b.X[i]));
    ys.push_back(MultiPoly::variable(b.ring, b.Y[i]));
  }
  auto br = bracket(g, xs, ys);
  MultiPoly expected(b.ring);
  for (int k = 0; k < 3; ++k)
    expected += Rational(1, 2) * (br[k] * MultiPoly::variable(b.ring, b.s[k]));
  CHECK(sigma_n(sym, 1) == expected);
  // Abelian: sigma_n = 0 for n >= 1.
  StarSymbol ab = star_symbol(abelian_algebra(2), 4, TauMode::trivial_mode());
  for (int n = 1; n <= 4; ++n) CHECK(sigma_n(ab, n).is_zero());
}

TEST_CASE("assembled symbol respects the scaling grading") {
  // Every term of Aw has t-degree equal to its (X,Y)-degree; every term
  // of Ar has t-degree = (X,Y)-degree - x-degree.
  StarSymbol sym = star_symbol(sl2_algebra(), 4, TauMode::trivial_mode());
  const VarBlocks& b = sym.blocks;
  for (const auto& [m, c] : sym.Aw.poly().terms()) {
    int xy = 0;
    for (int i = 0; i < 3; ++i) xy += m[b.X[i]] + m[b.Y[i]];
    CHECK(m[b.t] == xy);
  }
  for (const auto& [m, c] : sym.Ar.poly().terms()) {
    int xy = 0, s = 0;
    for (int i = 0; i < 3; ++i) {
      xy += m[b.X[i]] + m[b.Y[i]];
      s += m[b.s[i]];
    }
    CHECK(m[b.t] == xy - s);
  }
}
