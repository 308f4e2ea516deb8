#include "kstar/envelope.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "kstar/duflo.hpp"
#include "kstar/errors.hpp"

namespace kstar {

namespace {

RingPtr ug_coeff_ring() {
  static RingPtr ring = make_ring({"t"}, {0});
  return ring;
}

using Word = std::vector<std::uint8_t>;  // generator indices, left to right

Mono word_to_mono(int dim, const Word& w) {
  Mono m(dim, 0);
  for (auto i : w) m[i] = static_cast<std::uint8_t>(m[i] + 1);
  return m;
}

Word mono_to_word(const Mono& m) {
  Word w;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int r = 0; r < m[i]; ++r) w.push_back(static_cast<std::uint8_t>(i));
  return w;
}

// Straightening cache shared process-wide; inserts are idempotent because
// results are value-determined by (algebra, word).
struct StraightenCache {
  std::mutex mutex;
  std::map<std::pair<std::string, Word>, std::map<Mono, MultiPoly, GradedLexLess>> memo;
};

StraightenCache& straighten_cache() {
  static StraightenCache cache;
  return cache;
}

std::map<Mono, MultiPoly, GradedLexLess> straighten(const LieAlgebra& g, const Word& w);

void accumulate(std::map<Mono, MultiPoly, GradedLexLess>& into, const Mono& m,
                const MultiPoly& c) {
  auto [it, inserted] = into.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
  }
}

std::map<Mono, MultiPoly, GradedLexLess> straighten_uncached(const LieAlgebra& g,
                                                             const Word& w) {
  std::map<Mono, MultiPoly, GradedLexLess> out;
  // First descent; terminating measure is (length, inversion count).
  std::size_t p = 0;
  while (p + 1 < w.size() && w[p] <= w[p + 1]) ++p;
  if (p + 1 >= w.size()) {
    out.emplace(word_to_mono(g.dim(), w), MultiPoly::constant(ug_coeff_ring(), Rational(1)));
    return out;
  }
  Word swapped = w;
  std::swap(swapped[p], swapped[p + 1]);
  out = straighten(g, swapped);
  // e_j e_i = e_i e_j + [e_j, e_i]
  int j = w[p], i = w[p + 1];
  MultiPoly scale = g.scale_poly(ug_coeff_ring());
  for (int k = 0; k < g.dim(); ++k) {
    Rational c = g.c(j, i, k);
    if (c == 0) continue;
    Word reduced;
    reduced.insert(reduced.end(), w.begin(), w.begin() + p);
    reduced.push_back(static_cast<std::uint8_t>(k));
    reduced.insert(reduced.end(), w.begin() + p + 2, w.end());
    MultiPoly factor = scale;
    factor *= c;
    for (const auto& [m, coeff] : straighten(g, reduced))
      accumulate(out, m, MultiPoly::mul(coeff, factor, -1));
  }
  return out;
}

std::map<Mono, MultiPoly, GradedLexLess> straighten(const LieAlgebra& g, const Word& w) {
  auto& cache = straighten_cache();
  std::pair<std::string, Word> key{g.fingerprint(), w};
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.memo.find(key);
    if (it != cache.memo.end()) return it->second;
  }
  auto value = straighten_uncached(g, w);
  std::lock_guard<std::mutex> lock(cache.mutex);
  return cache.memo.emplace(std::move(key), std::move(value)).first->second;
}

void check_compatible(const EnvelopingElement& a, const EnvelopingElement& b) {
  if (a.algebra().fingerprint() != b.algebra().fingerprint())
    throw std::invalid_argument("enveloping elements over different algebras");
}

}  // namespace

EnvelopingElement::EnvelopingElement(const LieAlgebra& g)
    : algebra_(g), tring_(ug_coeff_ring()) {}

EnvelopingElement EnvelopingElement::zero(const LieAlgebra& g) { return EnvelopingElement(g); }

EnvelopingElement EnvelopingElement::unit(const LieAlgebra& g) {
  EnvelopingElement e(g);
  e.terms_.emplace(Mono(g.dim(), 0), MultiPoly::constant(e.tring_, Rational(1)));
  return e;
}

EnvelopingElement EnvelopingElement::generator(const LieAlgebra& g, int i) {
  if (i < 0 || i >= g.dim()) throw std::invalid_argument("generator index out of range");
  EnvelopingElement e(g);
  Mono m(g.dim(), 0);
  m[i] = 1;
  e.terms_.emplace(std::move(m), MultiPoly::constant(e.tring_, Rational(1)));
  return e;
}

EnvelopingElement EnvelopingElement::monomial(const LieAlgebra& g, const Mono& m,
                                              MultiPoly coeff) {
  if (static_cast<int>(m.size()) != g.dim())
    throw std::invalid_argument("PBW monomial length mismatch");
  EnvelopingElement e(g);
  e.add_term(m, coeff.embedded(e.tring_));
  return e;
}

int EnvelopingElement::degree() const {
  return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

bool EnvelopingElement::operator==(const EnvelopingElement& other) const {
  check_compatible(*this, other);
  return terms_ == other.terms_;
}

EnvelopingElement EnvelopingElement::operator-() const {
  EnvelopingElement out(algebra_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

EnvelopingElement& EnvelopingElement::operator+=(const EnvelopingElement& other) {
  check_compatible(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

EnvelopingElement& EnvelopingElement::operator-=(const EnvelopingElement& other) {
  check_compatible(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

void EnvelopingElement::add_term(const Mono& m, const MultiPoly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void EnvelopingElement::scale_coeffs(const MultiPoly& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return;
  }
  for (auto& [m, c] : terms_) c = MultiPoly::mul(c, factor, -1);
}

std::string EnvelopingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string cs = c.to_string();
    if (c.term_count() > 1)
      os << '(' << cs << ')';
    else
      os << cs;
    if (total_degree(m) > 0) {
      os << " *";
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << ' ' << algebra_.basis_names()[i];
        if (m[i] > 1) os << '^' << int(m[i]);
      }
    }
  }
  return os.str();
}

EnvelopingElement ug_multiply(const EnvelopingElement& a, const EnvelopingElement& b) {
  check_compatible(a, b);
  const LieAlgebra& g = a.algebra();
  EnvelopingElement out(g);
  for (const auto& [ma, ca] : a.terms()) {
    Word wa = mono_to_word(ma);
    for (const auto& [mb, cb] : b.terms()) {
      Word w = wa;
      Word wb = mono_to_word(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      MultiPoly c = MultiPoly::mul(ca, cb, -1);
      for (const auto& [m, s] : straighten(g, w)) out.add_term(m, MultiPoly::mul(c, s, -1));
    }
  }
  return out;
}

EnvelopingElement beta_symmetrize(const LieAlgebra& g, const MultiPoly& p,
                                  std::span<const int> x_vars) {
  if (static_cast<int>(x_vars.size()) != g.dim())
    throw std::invalid_argument("beta_symmetrize: block size mismatch");
  const PolyRing& ring = *p.ring();
  int tvar = ring.index_of("t");
  std::vector<char> in_block(ring.size(), 0);
  for (int v : x_vars) in_block[v] = 1;

  EnvelopingElement out(g);
  RingPtr tring = out.coeff_ring();
  for (const auto& [m, c] : p.terms()) {
    Mono alpha(g.dim(), 0);
    Mono tpart(1, 0);
    for (std::size_t v = 0; v < ring.size(); ++v) {
      if (m[v] == 0) continue;
      if (in_block[v]) continue;
      if (static_cast<int>(v) == tvar) {
        tpart[0] = m[v];
        continue;
      }
      throw std::invalid_argument("beta_symmetrize: input uses variable " + ring.name(v) +
                                  " outside the S(g) block");
    }
    for (int i = 0; i < g.dim(); ++i) alpha[i] = m[x_vars[i]];
    MultiPoly coeff = MultiPoly::monomial(tring, tpart, c);

    Word word = mono_to_word(alpha);
    int k = total_degree(alpha);
    if (k == 0) {
      out.add_term(Mono(g.dim(), 0), coeff);
      continue;
    }
    // (1/k!) over all orderings = (prod alpha_i!/k!) over distinct words.
    Rational norm = multi_factorial(alpha) / factorial(static_cast<unsigned>(k));
    MultiPoly scaled = coeff;
    scaled *= norm;
    Word perm = word;  // already sorted ascending
    do {
      for (const auto& [mm, s] : straighten(g, perm))
        out.add_term(mm, MultiPoly::mul(scaled, s, -1));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

EnvelopingElement eta(const LieAlgebra& g, const MultiPoly& u, std::span<const int> x_vars,
                      int order) {
  int deg = u.degree_in(x_vars);
  if (order < deg)
    throw InsufficientTruncationOrder("eta: order " + std::to_string(order) +
                                      " below degree " + std::to_string(deg));
  TruncSeries q = q_series(g, order);
  VarBlocks qb = duflo_blocks(g.dim());
  MultiPoly uq = distribution_times_function(u, x_vars, q, qb.Xs());
  return beta_symmetrize(g, uq, x_vars);
}

MultiPoly eta_inverse(const EnvelopingElement& a, const RingPtr& result_ring,
                      std::span<const int> x_vars, int order) {
  const LieAlgebra& g = a.algebra();
  if (a.degree() > order)
    throw InsufficientTruncationOrder("eta_inverse: element degree exceeds order");
  MultiPoly u(result_ring);
  EnvelopingElement rem = a;
  while (!rem.is_zero()) {
    int k = rem.degree();
    MultiPoly top(result_ring);
    for (const auto& [m, c] : rem.terms()) {
      if (total_degree(m) != k) continue;
      Mono mono(result_ring->size(), 0);
      for (int i = 0; i < g.dim(); ++i) mono[x_vars[i]] = m[i];
      top += MultiPoly::mul(c.embedded(result_ring),
                            MultiPoly::monomial(result_ring, mono, Rational(1)), -1);
    }
    u += top;
    rem -= eta(g, top, x_vars, order);
    if (rem.degree() >= k)
      throw SingularTriangularSystem("eta_inverse: filtration failed to descend at degree " +
                                     std::to_string(k));
  }
  return u;
}

}  // namespace kstar
