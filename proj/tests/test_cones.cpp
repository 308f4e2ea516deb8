#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kstar/cones.hpp"
#include "kstar/errors.hpp"

using namespace kstar;

namespace {

using Vec = std::vector<Rational>;

PolyhedralCone cone(int d, std::vector<Vec> gens) { return PolyhedralCone(d, std::move(gens)); }

Vec rvec(std::mt19937& rng, int d, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> coord(lo, hi);
  Vec v;
  for (int i = 0; i < d; ++i) v.emplace_back(coord(rng));
  return v;
}

// Rational-ray sampler: brute search for a nonzero common point of
// cone(C1) and -cone(C2) using small nonnegative rational multipliers.
// One-sided: finding a witness proves incompatibility.
bool sampler_finds_witness(const PolyhedralCone& c1, const PolyhedralCone& c2) {
  const auto& g = c1.generators();
  const auto& h = c2.generators();
  std::vector<Rational> mults{Rational(0), Rational(1), Rational(1, 2), Rational(2),
                              Rational(1, 3)};
  std::size_t p = g.size(), q = h.size();
  if (p == 0 || q == 0) return false;
  // All multiplier tuples over a support of at most two generators a side.
  auto combos = [&](const std::vector<Vec>& gens) {
    std::vector<Vec> points;
    std::size_t k = gens.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j)
        for (const auto& a : mults)
          for (const auto& b : mults) {
            Vec v(gens[0].size(), Rational(0));
            for (std::size_t c = 0; c < v.size(); ++c)
              v[c] = a * gens[i][c] + b * gens[j][c];
            points.push_back(std::move(v));
          }
    return points;
  };
  auto pts1 = combos(g), pts2 = combos(h);
  for (const auto& x : pts1) {
    bool zero = true;
    for (const auto& c : x) zero = zero && c == 0;
    if (zero) continue;
    for (const auto& y : pts2) {
      bool match = true;
      for (std::size_t c = 0; c < x.size(); ++c) match = match && x[c] == -y[c];
      if (match) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("compatibility basics") {
  PolyhedralCone quadrant = cone(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  CHECK(compatible(quadrant, quadrant));

  PolyhedralCone right = cone(2, {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)},
                                  {Rational(0), Rational(1)}});
  PolyhedralCone left = cone(2, {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)},
                                 {Rational(0), Rational(-1)}});
  CHECK_FALSE(compatible(right, left));

  PolyhedralCone origin = cone(2, {});
  CHECK(compatible(origin, right));
  CHECK(compatible(right, origin));
  CHECK(compatible(origin, origin));

  CHECK_THROWS_AS(compatible(origin, cone(3, {})), std::invalid_argument);
}

TEST_CASE("minus is an involution that preserves generator count") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(rvec(rng, 3));
    PolyhedralCone c = cone(3, gens);
    CHECK(minus(minus(c)) == c);
    CHECK(minus(c).generators().size() == c.generators().size());
  }
  PolyhedralCone origin = cone(2, {});
  CHECK(minus(origin) == origin);
}

TEST_CASE("canonical form: primitive, deduplicated, zero-free") {
  PolyhedralCone c = cone(2, {{Rational(2), Rational(4)},
                              {Rational(1), Rational(2)},
                              {Rational(1, 2), Rational(1)},
                              {Rational(0), Rational(0)}});
  REQUIRE(c.generators().size() == 1);
  CHECK(c.generators()[0] == Vec{Rational(1), Rational(2)});
}

TEST_CASE("cone literals round trip") {
  PolyhedralCone c = cone(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  CHECK(c.to_string() == "cone d=2 gens=(0,1),(1,0)");
  CHECK(PolyhedralCone::parse(c.to_string()) == c);
  CHECK(PolyhedralCone::parse("cone d=3 gens=") == cone(3, {}));
  CHECK(PolyhedralCone::parse("cone d=2 gens=(1/2,1)") ==
        cone(2, {{Rational(1), Rational(2)}}));
  CHECK_THROWS_AS(PolyhedralCone::parse("gens=(1,0)"), ParseError);
}

TEST_CASE("compatible is symmetric through minus") {
  std::mt19937 rng(11);
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Vec> g1, g2;
      for (int i = 0; i < d; ++i) {
        g1.push_back(rvec(rng, d));
        g2.push_back(rvec(rng, d));
      }
      PolyhedralCone c1 = cone(d, g1), c2 = cone(d, g2);
      CHECK(compatible(c1, c2) == compatible(c2, c1));
      CHECK(compatible(c1, c2) == compatible(minus(c1), minus(c2)));
    }
  }
}

TEST_CASE("pointedness: compatible(C, C) iff C is salient") {
  PolyhedralCone quadrant = cone(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  CHECK(is_salient(quadrant));
  PolyhedralCone halfplane = cone(2, {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)},
                                      {Rational(0), Rational(1)}});
  CHECK_FALSE(is_salient(halfplane));
  CHECK_FALSE(compatible(halfplane, halfplane));
  // Brute confirmation on the halfplane: the sampler finds the shared ray.
  CHECK(sampler_finds_witness(halfplane, halfplane));
}

TEST_CASE("random cone pairs agree with the rational-ray sampler") {
  std::mt19937 rng(2024);
  int checked_compatible = 0, checked_incompatible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng() % 2);
    bool plant_witness = trial % 2 == 0;
    std::vector<Vec> g1, g2;
    if (plant_witness) {
      // Share a ray: v in C1 and -v in C2 force incompatibility.
      Vec v = rvec(rng, d);
      bool zero = true;
      for (const auto& c : v) zero = zero && c == 0;
      if (zero) v[0] = 1;
      g1.push_back(v);
      Vec neg = v;
      for (auto& c : neg) c = -c;
      g2.push_back(neg);
      for (int i = 0; i < d - 1; ++i) {
        g1.push_back(rvec(rng, d));
        g2.push_back(rvec(rng, d));
      }
      PolyhedralCone c1 = cone(d, g1), c2 = cone(d, g2);
      CHECK_FALSE(compatible(c1, c2));
      CHECK(sampler_finds_witness(c1, c2));
      ++checked_incompatible;
    } else {
      // Strictly separated: all generators of C1 and C2 have positive
      // first coordinate, so C1 n -C2 = {0}.
      for (int i = 0; i < d; ++i) {
        Vec a = rvec(rng, d, -3, 3), b = rvec(rng, d, -3, 3);
        a[0] = Rational(1 + static_cast<int>(rng() % 3));
        b[0] = Rational(1 + static_cast<int>(rng() % 3));
        g1.push_back(a);
        g2.push_back(b);
      }
      PolyhedralCone c1 = cone(d, g1), c2 = cone(d, g2);
      CHECK(compatible(c1, c2));
      CHECK_FALSE(sampler_finds_witness(c1, c2));
      ++checked_compatible;
    }
  }
  CHECK(checked_compatible == 50);
  CHECK(checked_incompatible == 50);
}
