#include "kstar/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

PolyRing::PolyRing(std::vector<std::string> names, std::vector<int> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.size() != weights_.size())
    throw std::invalid_argument("ring: names/weights size mismatch");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("ring: empty variable name");
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw std::invalid_argument("ring: duplicate variable " + names_[i]);
  }
}

int PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

bool PolyRing::same(const PolyRing& other) const {
  return this == &other || (names_ == other.names_ && weights_ == other.weights_);
}

RingPtr make_ring(std::vector<std::string> names, std::vector<int> weights) {
  return std::make_shared<const PolyRing>(std::move(names), std::move(weights));
}

RingPtr make_ring(std::vector<std::string> names) {
  std::vector<int> weights(names.size(), 1);
  return make_ring(std::move(names), std::move(weights));
}

int total_degree(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

int weighted_degree(const PolyRing& ring, const Mono& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (ring.weight(i)) d += m[i];
  return d;
}

bool GradedLexLess::operator()(const Mono& a, const Mono& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // Within a degree, earlier variables with higher exponents come first.
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void check_same_ring(const MultiPoly& a, const MultiPoly& b) {
  if (!a.ring() || !b.ring() || !a.ring()->same(*b.ring()))
    throw std::invalid_argument("polynomial operands over different rings");
}

Mono mono_add(const Mono& a, const Mono& b) {
  Mono out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    int s = int(a[i]) + int(b[i]);
    if (s > 255) throw std::overflow_error("monomial exponent exceeds 255");
    out[i] = static_cast<std::uint8_t>(s);
  }
  return out;
}

}  // namespace

MultiPoly MultiPoly::constant(RingPtr ring, Rational value) {
  MultiPoly p(std::move(ring));
  if (value != 0) p.terms_.emplace(Mono(p.ring_->size(), 0), std::move(value));
  return p;
}

MultiPoly MultiPoly::variable(RingPtr ring, int index) {
  if (index < 0 || index >= static_cast<int>(ring->size()))
    throw std::invalid_argument("variable index out of range");
  Mono m(ring->size(), 0);
  m[index] = 1;
  return monomial(std::move(ring), m, Rational(1));
}

MultiPoly MultiPoly::monomial(RingPtr ring, const Mono& m, Rational coeff) {
  if (m.size() != ring->size()) throw std::invalid_argument("monomial length mismatch");
  MultiPoly p(std::move(ring));
  if (coeff != 0) p.terms_.emplace(m, std::move(coeff));
  return p;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  // Last term has maximal total degree under the graded order.
  return total_degree(terms_.rbegin()->first);
}

int MultiPoly::weighted_deg() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, weighted_degree(*ring_, m));
  return d;
}

int MultiPoly::weighted_valuation() const {
  int d = std::numeric_limits<int>::max();
  for (const auto& [m, c] : terms_) d = std::min(d, weighted_degree(*ring_, m));
  return d;
}

int MultiPoly::degree_in(std::span<const int> vars) const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int v : vars) s += m[v];
    d = std::max(d, s);
  }
  return d;
}

Rational MultiPoly::coefficient(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const {
  return coefficient(Mono(ring_->size(), 0));
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  check_same_ring(*this, other);
  return terms_ == other.terms_;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(ring_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

void MultiPoly::add_term(const Mono& m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_same_ring(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_same_ring(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

MultiPoly MultiPoly::mul(const MultiPoly& a, const MultiPoly& b, int max_wdeg) {
  check_same_ring(a, b);
  MultiPoly out(a.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return out;

  if (max_wdeg < 0) {
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(mono_add(ma, mb), ca * cb);
    return out;
  }

  // Bucket terms by weighted degree so whole bucket pairs above the cut
  // are skipped.
  auto bucket = [&](const MultiPoly& p) {
    std::vector<std::vector<const std::pair<const Mono, Rational>*>> bk;
    for (const auto& term : p.terms_) {
      int w = weighted_degree(*p.ring_, term.first);
      if (w > max_wdeg) continue;
      if (static_cast<int>(bk.size()) <= w) bk.resize(w + 1);
      bk[w].push_back(&term);
    }
    return bk;
  };
  auto ba = bucket(a), bb = bucket(b);
  for (int wa = 0; wa < static_cast<int>(ba.size()); ++wa) {
    if (ba[wa].empty()) continue;
    int cap = max_wdeg - wa;
    for (int wb = 0; wb <= cap && wb < static_cast<int>(bb.size()); ++wb) {
      for (const auto* ta : ba[wa])
        for (const auto* tb : bb[wb])
          out.add_term(mono_add(ta->first, tb->first), ta->second * tb->second);
    }
  }
  return out;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly out(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono d = m;
    d[var] -= 1;
    out.add_term(d, c * Rational(int(m[var])));
  }
  return out;
}

MultiPoly MultiPoly::truncated(int max_wdeg) const {
  MultiPoly out(ring_);
  for (const auto& [m, c] : terms_)
    if (weighted_degree(*ring_, m) <= max_wdeg) out.terms_.emplace(m, c);
  return out;
}

MultiPoly MultiPoly::coefficient_of(int var, int exponent) const {
  MultiPoly out(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] != exponent) continue;
    Mono r = m;
    r[var] = 0;
    out.terms_.emplace(r, c);
  }
  return out;
}

MultiPoly MultiPoly::weighted_slice(int wdeg) const {
  MultiPoly out(ring_);
  for (const auto& [m, c] : terms_)
    if (weighted_degree(*ring_, m) == wdeg) out.terms_.emplace(m, c);
  return out;
}

MultiPoly MultiPoly::embedded(RingPtr target) const {
  std::vector<int> map(ring_->size(), -1);
  for (std::size_t i = 0; i < ring_->size(); ++i)
    map[i] = target->index_of(ring_->name(i));
  MultiPoly out(target);
  for (const auto& [m, c] : terms_) {
    Mono t(target->size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (map[i] < 0)
        throw std::invalid_argument("embed: target ring lacks variable " + ring_->name(i));
      t[map[i]] = m[i];
    }
    out.terms_.emplace(std::move(t), c);
  }
  return out;
}

MultiPoly MultiPoly::substituted(const RingPtr& target,
                                 const std::vector<std::optional<MultiPoly>>& images,
                                 int max_wdeg) const {
  if (images.size() != ring_->size())
    throw std::invalid_argument("substitute: one image slot per variable required");
  // Power cache per substituted variable.
  std::vector<std::vector<MultiPoly>> powers(ring_->size());
  std::vector<int> name_map(ring_->size(), -1);
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    if (images[i]) {
      if (!images[i]->ring()->same(*target))
        throw std::invalid_argument("substitute: image over wrong ring");
      powers[i].push_back(MultiPoly::constant(target, Rational(1)));
    } else {
      name_map[i] = target->index_of(ring_->name(i));
    }
  }
  auto power = [&](std::size_t var, int e) -> const MultiPoly& {
    auto& tower = powers[var];
    while (static_cast<int>(tower.size()) <= e)
      tower.push_back(MultiPoly::mul(tower.back(), *images[var], max_wdeg));
    return tower[e];
  };

  MultiPoly out(target);
  for (const auto& [m, c] : terms_) {
    MultiPoly term = MultiPoly::constant(target, c);
    Mono fixed(target->size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (images[i]) {
        term = MultiPoly::mul(term, power(i, m[i]), max_wdeg);
      } else {
        if (name_map[i] < 0)
          throw std::invalid_argument("substitute: target ring lacks variable " +
                                      ring_->name(i));
        fixed[name_map[i]] = static_cast<std::uint8_t>(fixed[name_map[i]] + m[i]);
      }
    }
    if (total_degree(fixed) > 0)
      term = MultiPoly::mul(term, MultiPoly::monomial(target, fixed, Rational(1)), max_wdeg);
    out += term;
  }
  if (max_wdeg >= 0) out = out.truncated(max_wdeg);
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational shown = c;
    if (first) {
      first = false;
    } else if (c < 0) {
      os << " - ";
      shown = -c;
    } else {
      os << " + ";
    }
    os << rational_to_string(shown);
    if (total_degree(m) > 0) {
      os << " *";
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << ' ' << ring_->name(i);
        if (m[i] > 1) os << '^' << int(m[i]);
      }
    }
  }
  return os.str();
}

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
};

}  // namespace

MultiPoly MultiPoly::parse(RingPtr ring, const std::string& text) {
  Lexer lx{text};
  MultiPoly out(ring);
  bool expect_term = true;
  int sign = 1;
  if (lx.done()) throw ParseError("empty polynomial");
  while (!lx.done()) {
    char ch = lx.peek();
    if (ch == '+' || ch == '-') {
      if (expect_term && ch == '+') throw ParseError("unexpected '+' in polynomial");
      if (ch == '-') sign = -sign;
      ++lx.pos;
      expect_term = true;
      continue;
    }
    if (!expect_term) throw ParseError("missing '+' between terms in polynomial");
    expect_term = false;

    Rational coeff(1);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = lx.pos;
      while (lx.pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[lx.pos])) || text[lx.pos] == '/'))
        ++lx.pos;
      coeff = rational_from_string(text.substr(start, lx.pos - start));
      have_coeff = true;
    }
    // Optional '*' after the coefficient.
    if (have_coeff && lx.peek() == '*') ++lx.pos;

    Mono m(ring->size(), 0);
    bool have_var = false;
    while (true) {
      char vch = lx.peek();
      if (!(std::isalpha(static_cast<unsigned char>(vch)) || vch == '_')) break;
      std::size_t start = lx.pos;
      while (lx.pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[lx.pos])) || text[lx.pos] == '_'))
        ++lx.pos;
      std::string name = text.substr(start, lx.pos - start);
      int idx = ring->index_of(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "' in polynomial");
      int exp = 1;
      if (lx.peek() == '^') {
        ++lx.pos;
        lx.skip_ws();
        std::size_t estart = lx.pos;
        while (lx.pos < text.size() && std::isdigit(static_cast<unsigned char>(text[lx.pos])))
          ++lx.pos;
        if (estart == lx.pos) throw ParseError("missing exponent after '^'");
        exp = std::stoi(text.substr(estart, lx.pos - estart));
        if (exp < 0 || exp > 255) throw ParseError("exponent out of range");
      }
      int total = m[idx] + exp;
      if (total > 255) throw ParseError("exponent out of range");
      m[idx] = static_cast<std::uint8_t>(total);
      have_var = true;
      if (lx.peek() == '*') ++lx.pos;  // tolerate '*' between factors
    }
    if (!have_coeff && !have_var) throw ParseError("malformed term in polynomial: " + text);
    out.add_term(m, Rational(sign) * coeff);
    sign = 1;
  }
  if (expect_term) throw ParseError("dangling sign in polynomial");
  return out;
}

VarBlocks make_blocks(int dim, bool with_X, bool with_Y, bool with_s, bool with_t) {
  VarBlocks b;
  b.dim = dim;
  std::vector<std::string> names;
  std::vector<int> weights;
  auto block = [&](const char* prefix, int weight, std::vector<int>& out) {
    for (int i = 1; i <= dim; ++i) {
      out.push_back(static_cast<int>(names.size()));
      names.push_back(prefix + std::to_string(i));
      weights.push_back(weight);
    }
  };
  if (with_X) block("X", 1, b.X);
  if (with_Y) block("Y", 1, b.Y);
  if (with_s) block("x", 0, b.s);
  if (with_t) {
    b.t = static_cast<int>(names.size());
    names.push_back("t");
    weights.push_back(0);
  }
  b.ring = make_ring(std::move(names), std::move(weights));
  return b;
}

Rational pair_moments(const MultiPoly& p, std::span<const int> p_vars,
                      const MultiPoly& phi, std::span<const int> phi_vars) {
  if (p_vars.size() != phi_vars.size())
    throw std::invalid_argument("pair_moments: block size mismatch");
  auto block_exponents = [](const Mono& m, std::span<const int> vars, const char* what) {
    Mono out(vars.size());
    int used = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      out[i] = m[vars[i]];
      used += out[i];
    }
    if (used != total_degree(m))
      throw std::invalid_argument(std::string("pair_moments: ") + what +
                                  " uses variables outside its block");
    return out;
  };
  Rational total(0);
  for (const auto& [mp, cp] : p.terms()) {
    Mono a = block_exponents(mp, p_vars, "distribution");
    Mono target(phi.ring()->size(), 0);
    for (std::size_t i = 0; i < phi_vars.size(); ++i) target[phi_vars[i]] = a[i];
    for (const auto& [mf, cf] : phi.terms()) {
      block_exponents(mf, phi_vars, "test function");
      if (mf == target) total += cp * cf * multi_factorial(a);
    }
  }
  return total;
}

}  // namespace kstar
