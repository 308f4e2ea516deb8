#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kstar/errors.hpp"
#include "kstar/poly.hpp"

using namespace kstar;

namespace {

RingPtr xy_ring() { return make_ring({"x", "y"}); }

MultiPoly random_poly(const RingPtr& ring, std::mt19937& rng, int max_deg, int terms) {
  std::uniform_int_distribution<int> exp(0, max_deg);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  MultiPoly p(ring);
  for (int i = 0; i < terms; ++i) {
    Mono m(ring->size());
    for (auto& e : m) e = static_cast<std::uint8_t>(exp(rng));
    p.add_term(m, make_rational(num(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing is strict and round trips") {
  CHECK(rational_from_string("3/4") == Rational(3, 4));
  CHECK(rational_from_string("-6/8") == Rational(-3, 4));
  CHECK(rational_from_string("5") == Rational(5));
  CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
  CHECK(rational_to_string(Rational(7)) == "7");
  CHECK_THROWS_AS(rational_from_string("1.5"), ParseError);
  CHECK_THROWS_AS(rational_from_string(""), ParseError);
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_string("2/"), ParseError);
}

TEST_CASE("graded-lex term order starts at the constant term") {
  auto ring = xy_ring();
  MultiPoly p = MultiPoly::parse(ring, "y^2 + x y + 1 + x + x^2 + y");
  std::vector<std::string> seen;
  for (const auto& [m, c] : p.terms()) {
    MultiPoly one = MultiPoly::monomial(ring, m, Rational(1));
    seen.push_back(one.to_string());
  }
  CHECK(seen == std::vector<std::string>{"1", "1 * x", "1 * y", "1 * x^2", "1 * x y",
                                         "1 * y^2"});
}

TEST_CASE("ring axioms hold on random polynomials") {
  auto ring = xy_ring();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    MultiPoly a = random_poly(ring, rng, 3, 4);
    MultiPoly b = random_poly(ring, rng, 3, 4);
    MultiPoly c = random_poly(ring, rng, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("canonical text form round trips") {
  auto ring = xy_ring();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    MultiPoly p = random_poly(ring, rng, 4, 5);
    CHECK(MultiPoly::parse(ring, p.to_string()) == p);
  }
  CHECK(MultiPoly(ring).to_string() == "0");
  CHECK(MultiPoly::parse(ring, "0").is_zero());
  CHECK(MultiPoly::parse(ring, "x - x").is_zero());
  CHECK(MultiPoly::parse(ring, "2x + x") == MultiPoly::parse(ring, "3 * x"));
  CHECK_THROWS_AS(MultiPoly::parse(ring, "z"), ParseError);
  CHECK_THROWS_AS(MultiPoly::parse(ring, "1 +"), ParseError);
}

TEST_CASE("no zero coefficients are ever stored") {
  auto ring = xy_ring();
  MultiPoly p = MultiPoly::parse(ring, "x + y");
  MultiPoly q = MultiPoly::parse(ring, "x - y");
  MultiPoly sum = p + q;  // 2x
  CHECK(sum.term_count() == 1);
  p.add_term(Mono{1, 0}, Rational(-1));
  CHECK(p.term_count() == 1);  // only y remains
}

TEST_CASE("weighted degrees ignore weight-0 variables") {
  auto ring = make_ring({"X", "t"}, {1, 0});
  MultiPoly p = MultiPoly::parse(ring, "X^2 t^5 + X t");
  CHECK(p.weighted_deg() == 2);
  CHECK(p.degree() == 7);
  CHECK(p.truncated(1) == MultiPoly::parse(ring, "X t"));
}

TEST_CASE("substitution composes polynomials") {
  auto ring = xy_ring();
  auto target = make_ring({"u", "v"});
  MultiPoly p = MultiPoly::parse(ring, "x^2 + y");
  std::vector<std::optional<MultiPoly>> images(2);
  images[0] = MultiPoly::parse(target, "u + v");
  images[1] = MultiPoly::parse(target, "u v");
  CHECK(p.substituted(target, images) == MultiPoly::parse(target, "u^2 + 2 u v + v^2 + u v"));
}

TEST_CASE("pair_moments implements <d_p, phi> = dp(phi)(0)") {
  // On one block: <x^a, x^b> = a! delta_ab.
  auto pring = make_ring({"x1", "x2"});
  auto fring = make_ring({"X1", "X2"});
  std::vector<int> pv{0, 1}, fv{0, 1};
  MultiPoly p = MultiPoly::parse(pring, "x1^2 x2");
  CHECK(pair_moments(p, pv, MultiPoly::parse(fring, "X1^2 X2"), fv) == Rational(2));
  CHECK(pair_moments(p, pv, MultiPoly::parse(fring, "X1 X2"), fv) == Rational(0));
  CHECK(pair_moments(MultiPoly::parse(pring, "x1^3"), pv,
                     MultiPoly::parse(fring, "5 * X1^3"), fv) == Rational(30));
}
