#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kstar/duflo.hpp"
#include "kstar/envelope.hpp"
#include "kstar/errors.hpp"
#include "kstar/linalg.hpp"

using namespace kstar;

namespace {

VarBlocks sg_blocks(int dim) { return make_blocks(dim, false, false, true, true); }

MultiPoly x_mono(const VarBlocks& b, std::initializer_list<int> exps) {
  Mono m(b.ring->size(), 0);
  int i = 0;
  for (int e : exps) m[b.s[i++]] = static_cast<std::uint8_t>(e);
  return MultiPoly::monomial(b.ring, m, Rational(1));
}

MultiPoly random_sg_poly(const VarBlocks& b, std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> num(-4, 4);
  MultiPoly p(b.ring);
  for (int trial = 0; trial < 5; ++trial) {
    Mono m(b.ring->size(), 0);
    int left = max_deg;
    for (int i = 0; i < b.dim; ++i) {
      int e = static_cast<int>(rng() % (left + 1));
      m[b.s[i]] = static_cast<std::uint8_t>(e);
      left -= e;
    }
    p.add_term(m, Rational(num(rng)));
  }
  return p;
}

// Brute-force straightening oracle: rewrite words left to right with no
// memoization and no PBW bookkeeping shared with the implementation.
std::map<std::vector<int>, Rational> slow_straighten(const LieAlgebra& g,
                                                     std::vector<int> word,
                                                     const Rational& coeff) {
  for (std::size_t p = 0; p + 1 < word.size(); ++p) {
    if (word[p] <= word[p + 1]) continue;
    std::map<std::vector<int>, Rational> out;
    std::vector<int> swapped = word;
    std::swap(swapped[p], swapped[p + 1]);
    for (auto& [m, c] : slow_straighten(g, swapped, coeff)) out[m] += c;
    for (int k = 0; k < g.dim(); ++k) {
      Rational c = g.c(word[p], word[p + 1], k) * g.scale().coef;
      if (c == 0) continue;
      std::vector<int> reduced(word.begin(), word.begin() + p);
      reduced.push_back(k);
      reduced.insert(reduced.end(), word.begin() + p + 2, word.end());
      for (auto& [m, cc] : slow_straighten(g, reduced, coeff * c)) out[m] += cc;
    }
    return out;
  }
  return {{word, coeff}};
}

EnvelopingElement product_of_generators(const LieAlgebra& g, std::initializer_list<int> gens) {
  EnvelopingElement out = EnvelopingElement::unit(g);
  for (int i : gens) out = ug_multiply(out, EnvelopingElement::generator(g, i));
  return out;
}

}  // namespace

TEST_CASE("abelian multiplication is the polynomial product") {
  LieAlgebra g = abelian_algebra(3);
  auto a = product_of_generators(g, {2, 0});
  auto b = product_of_generators(g, {0, 2});
  CHECK(a == b);
  CHECK(ug_multiply(a, b).degree() == 4);
}

TEST_CASE("U(sl2) defining relation e f - f e = h") {
  LieAlgebra g = sl2_algebra();
  auto e = EnvelopingElement::generator(g, 1);
  auto f = EnvelopingElement::generator(g, 2);
  auto h = EnvelopingElement::generator(g, 0);
  CHECK(ug_multiply(e, f) - ug_multiply(f, e) == h);
  CHECK(ug_multiply(e, f).to_string() == "1 * e f");
  CHECK(ug_multiply(f, e).to_string() == "-1 * h + 1 * e f");
}

TEST_CASE("straightening agrees with the brute-force oracle") {
  std::mt19937 rng(31);
  for (const auto& g : {sl2_algebra(), heisenberg_algebra(), solvable2_algebra()}) {
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<int> word;
      int len = 2 + static_cast<int>(rng() % 3);
      for (int i = 0; i < len; ++i) word.push_back(static_cast<int>(rng() % g.dim()));
      auto expected = slow_straighten(g, word, Rational(1));
      EnvelopingElement got = EnvelopingElement::unit(g);
      for (int i : word) got = ug_multiply(got, EnvelopingElement::generator(g, i));
      EnvelopingElement want = EnvelopingElement::zero(g);
      for (const auto& [w, c] : expected) {
        Mono m(g.dim(), 0);
        for (int i : w) m[i] = static_cast<std::uint8_t>(m[i] + 1);
        want.add_term(m, MultiPoly::constant(want.coeff_ring(), c));
      }
      CHECK(got == want);
    }
  }
}

TEST_CASE("associativity of ug_multiply on random triples") {
  std::mt19937 rng(37);
  for (const auto& g : {sl2_algebra(), heisenberg_algebra(), solvable2_algebra()}) {
    VarBlocks b = sg_blocks(g.dim());
    for (int trial = 0; trial < 6; ++trial) {
      EnvelopingElement a = beta_symmetrize(g, random_sg_poly(b, rng, 2), b.ss());
      EnvelopingElement bb = beta_symmetrize(g, random_sg_poly(b, rng, 2), b.ss());
      EnvelopingElement c = beta_symmetrize(g, random_sg_poly(b, rng, 2), b.ss());
      CHECK(ug_multiply(ug_multiply(a, bb), c) == ug_multiply(a, ug_multiply(bb, c)));
    }
  }
}

TEST_CASE("beta on low degrees") {
  LieAlgebra g = sl2_algebra();
  VarBlocks b = sg_blocks(3);
  // Degree <= 1 is the identity.
  CHECK(beta_symmetrize(g, MultiPoly::constant(b.ring, Rational(3)), b.ss()).to_string() ==
        "3");
  CHECK(beta_symmetrize(g, x_mono(b, {0, 1, 0}), b.ss()) ==
        EnvelopingElement::generator(g, 1));
  // beta(x_e x_f) = (ef + fe)/2 = ef - h/2.
  EnvelopingElement ef = product_of_generators(g, {1, 2});
  EnvelopingElement h = EnvelopingElement::generator(g, 0);
  EnvelopingElement expected = ef;
  Mono hm(3, 0);
  hm[0] = 1;
  expected.add_term(hm, MultiPoly::constant(expected.coeff_ring(), Rational(-1, 2)));
  CHECK(beta_symmetrize(g, x_mono(b, {0, 1, 1}), b.ss()) == expected);
}

TEST_CASE("beta is a filtration-preserving bijection in degrees <= 4") {
  for (const auto& g : {sl2_algebra(), solvable2_algebra()}) {
    VarBlocks b = sg_blocks(g.dim());
    // Collect the monomial basis of S(g) up to degree 4.
    std::vector<Mono> basis;
    Mono alpha(g.dim(), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == g.dim()) {
        basis.push_back(alpha);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        alpha[pos] = static_cast<std::uint8_t>(e);
        self(self, pos + 1, left - e);
      }
      alpha[pos] = 0;
    };
    rec(rec, 0, 4);

    // Matrix of beta over that basis (PBW monomials use the same index set).
    std::map<Mono, int, GradedLexLess> index;
    for (const auto& m : basis) index.emplace(m, static_cast<int>(index.size()));
    Matrix mat(basis.size(), std::vector<Rational>(basis.size(), Rational(0)));
    for (std::size_t col = 0; col < basis.size(); ++col) {
      Mono pm(b.ring->size(), 0);
      for (int i = 0; i < g.dim(); ++i) pm[b.s[i]] = basis[col][i];
      EnvelopingElement image =
          beta_symmetrize(g, MultiPoly::monomial(b.ring, pm, Rational(1)), b.ss());
      for (const auto& [m, c] : image.terms()) {
        REQUIRE(index.count(m));
        CHECK(total_degree(m) <= total_degree(basis[col]));  // filtration preserving
        mat[index[m]][col] = c.constant_term();
      }
    }
    CHECK(matrix_rank(mat) == static_cast<int>(basis.size()));
  }
}

TEST_CASE("PBW monomial count matches dim S(g) by degree") {
  // Weakly increasing words of length k over d letters = monomials of
  // degree k in d variables.
  auto count_words = [](int d, int k) {
    // stars and bars
    long num = 1, den = 1;
    for (int i = 1; i <= k; ++i) {
      num *= (d + i - 1);
      den *= i;
    }
    return num / den;
  };
  CHECK(count_words(3, 4) == 15);
  CHECK(count_words(2, 3) == 4);
}

TEST_CASE("eta examples") {
  VarBlocks b3 = sg_blocks(3);

  // t = 0: abelian algebra, eta is beta is the identity on monomial data.
  LieAlgebra ab = abelian_algebra(3);
  MultiPoly u = x_mono(b3, {2, 1, 0}) + Rational(3) * x_mono(b3, {0, 0, 1});
  EnvelopingElement image = eta(ab, u, b3.ss(), 4);
  CHECK(eta_inverse(image, b3.ring, b3.ss(), 4) == u);

  // Constants map to constants: q(0) = 1.
  LieAlgebra g = sl2_algebra();
  EnvelopingElement c = eta(g, MultiPoly::constant(b3.ring, Rational(5)), b3.ss(), 2);
  CHECK(c.to_string() == "5");

  // Insufficient order is refused.
  CHECK_THROWS_AS(eta(g, x_mono(b3, {2, 2, 0}), b3.ss(), 3), InsufficientTruncationOrder);
}

TEST_CASE("eta of the Casimir is central in U(sl2)") {
  LieAlgebra g = sl2_algebra();
  VarBlocks b = sg_blocks(3);
  MultiPoly casimir = MultiPoly::parse(b.ring, "x1^2 + 4 x2 x3");
  EnvelopingElement omega = eta(g, casimir, b.ss(), 4);
  for (int i = 0; i < 3; ++i) {
    EnvelopingElement gen = EnvelopingElement::generator(g, i);
    CHECK(ug_multiply(omega, gen) == ug_multiply(gen, omega));
  }
  // The same holds in the scaled family.
  LieAlgebra gt = g.scaled_formal();
  EnvelopingElement omega_t = eta(gt, casimir, b.ss(), 4);
  for (int i = 0; i < 3; ++i) {
    EnvelopingElement gen = EnvelopingElement::generator(gt, i);
    CHECK(ug_multiply(omega_t, gen) == ug_multiply(gen, omega_t));
  }
}

TEST_CASE("eta_inverse round trips") {
  std::mt19937 rng(41);
  for (const auto& base : {sl2_algebra(), heisenberg_algebra()}) {
    for (bool formal : {false, true}) {
      LieAlgebra g = formal ? base.scaled_formal() : base;
      VarBlocks b = sg_blocks(g.dim());
      for (int trial = 0; trial < 6; ++trial) {
        MultiPoly u = random_sg_poly(b, rng, 4);
        EnvelopingElement a = eta(g, u, b.ss(), 4);
        CHECK(eta_inverse(a, b.ring, b.ss(), 4) == u);
      }
      // And the other side: eta(eta_inverse(a)) = a on PBW monomials.
      Mono m(g.dim(), 0);
      m[0] = 2;
      m[g.dim() - 1] = 1;
      EnvelopingElement a =
          EnvelopingElement::monomial(g, m, MultiPoly::constant(make_ring({"t"}, {0}), Rational(1)));
      EnvelopingElement back = eta(g, eta_inverse(a, b.ring, b.ss(), 4), b.ss(), 4);
      CHECK(back == a);
    }
  }
}

TEST_CASE("unit element round trips exactly") {
  LieAlgebra g = sl2_algebra();
  VarBlocks b = sg_blocks(3);
  EnvelopingElement one = EnvelopingElement::unit(g);
  CHECK(eta_inverse(one, b.ring, b.ss(), 3) == MultiPoly::constant(b.ring, Rational(1)));
}
