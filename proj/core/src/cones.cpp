#include "kstar/cones.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

namespace {

std::vector<Rational> primitive(const std::vector<Rational>& v) {
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& x : v) {
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class g;
    mpz_lcm(g.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
    den_lcm = g;
  }
  std::vector<mpz_class> ints;
  for (const auto& x : v) {
    mpz_class scaled = x.get_num() * (den_lcm / x.get_den());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    num_gcd = g;
    ints.push_back(scaled);
  }
  std::vector<Rational> out;
  for (const auto& z : ints) out.emplace_back(num_gcd == 0 ? z : mpz_class(z / num_gcd));
  return out;
}

bool rational_less(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }

bool vec_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return rational_less(a[i], b[i]);
  }
  return false;
}

// One linear inequality sum_i coeff[i] v_i <= bound.
struct Inequality {
  std::vector<Rational> coeff;
  Rational bound;
};

// Exact Fourier-Motzkin feasibility of a system of <= inequalities.
bool feasible(std::vector<Inequality> system, int nvars) {
  for (int v = 0; v < nvars; ++v) {
    std::vector<Inequality> pos, neg, rest;
    for (auto& ineq : system) {
      if (ineq.coeff[v] > 0)
        pos.push_back(std::move(ineq));
      else if (ineq.coeff[v] < 0)
        neg.push_back(std::move(ineq));
      else
        rest.push_back(std::move(ineq));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        // Eliminate v between p (upper bound) and n (lower bound).
        Rational a = p.coeff[v], b = -n.coeff[v];
        Inequality combo;
        combo.coeff.resize(nvars, Rational(0));
        for (int i = 0; i < nvars; ++i) combo.coeff[i] = b * p.coeff[i] + a * n.coeff[i];
        combo.bound = b * p.bound + a * n.bound;
        rest.push_back(std::move(combo));
      }
    system = std::move(rest);
    // Prune ground rows early.
    std::vector<Inequality> kept;
    for (auto& ineq : system) {
      bool ground = true;
      for (const auto& c : ineq.coeff) ground = ground && c == 0;
      if (ground) {
        if (ineq.bound < 0) return false;
      } else {
        kept.push_back(std::move(ineq));
      }
    }
    system = std::move(kept);
  }
  return true;
}

}  // namespace

PolyhedralCone::PolyhedralCone(int dim, std::vector<std::vector<Rational>> generators)
    : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("cone: dimension must be positive");
  for (auto& g : generators) {
    if (static_cast<int>(g.size()) != dim)
      throw std::invalid_argument("cone: generator of wrong dimension");
    bool zero = std::all_of(g.begin(), g.end(), [](const Rational& x) { return x == 0; });
    if (zero) continue;
    generators_.push_back(primitive(g));
  }
  std::sort(generators_.begin(), generators_.end(), vec_less);
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
}

std::string PolyhedralCone::to_string() const {
  std::ostringstream os;
  os << "cone d=" << dim_ << " gens=";
  bool first = true;
  for (const auto& g : generators_) {
    if (!first) os << ',';
    first = false;
    os << '(';
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) os << ',';
      os << rational_to_string(g[i]);
    }
    os << ')';
  }
  return os.str();
}

PolyhedralCone PolyhedralCone::parse(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  if (!(is >> word) || word != "cone") throw ParseError("cone literal must start with 'cone'");
  std::string dim_part;
  if (!(is >> dim_part) || dim_part.rfind("d=", 0) != 0)
    throw ParseError("cone literal: expected d=<dim>");
  int dim = std::atoi(dim_part.c_str() + 2);
  std::string gens_part;
  std::getline(is, gens_part);
  auto eq = gens_part.find("gens=");
  if (eq == std::string::npos) throw ParseError("cone literal: expected gens=...");
  std::string body = gens_part.substr(eq + 5);
  // Strip whitespace.
  std::string compact;
  for (char ch : body)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);

  std::vector<std::vector<Rational>> gens;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    if (compact[pos] == ',') {
      ++pos;
      continue;
    }
    if (compact[pos] != '(') throw ParseError("cone literal: expected '('");
    auto close = compact.find(')', pos);
    if (close == std::string::npos) throw ParseError("cone literal: missing ')'");
    std::string inner = compact.substr(pos + 1, close - pos - 1);
    std::vector<Rational> v;
    std::size_t start = 0;
    while (start <= inner.size()) {
      auto comma = inner.find(',', start);
      std::string token = inner.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
      if (!token.empty()) v.push_back(rational_from_string(token));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    gens.push_back(std::move(v));
    pos = close + 1;
  }
  return PolyhedralCone(dim, std::move(gens));
}

PolyhedralCone minus(const PolyhedralCone& c) {
  std::vector<std::vector<Rational>> gens;
  for (const auto& g : c.generators()) {
    std::vector<Rational> neg;
    for (const auto& x : g) neg.push_back(-x);
    gens.push_back(std::move(neg));
  }
  return PolyhedralCone(c.dim(), std::move(gens));
}

bool compatible(const PolyhedralCone& c1, const PolyhedralCone& c2) {
  if (c1.dim() != c2.dim()) throw std::invalid_argument("compatible: dimension mismatch");
  const auto& g = c1.generators();
  const auto& h = c2.generators();
  int p = static_cast<int>(g.size()), q = static_cast<int>(h.size());
  if (p == 0 || q == 0) return true;
  int d = c1.dim();
  int nvars = p + q;

  // A nonzero x in cone(C1) n -cone(C2) means lambda, mu >= 0 with
  // sum lambda_i g_i = -sum mu_j h_j = x and x_k = s for some coordinate k
  // and sign s in {1,-1} (scale invariance pins x_k to 1).
  for (int k = 0; k < d; ++k) {
    for (int sign : {1, -1}) {
      std::vector<Inequality> system;
      auto push_eq = [&](std::vector<Rational> coeff, Rational bound) {
        Inequality le{coeff, bound};
        Inequality ge;
        ge.bound = -bound;
        for (auto& c : coeff) c = -c;
        ge.coeff = std::move(coeff);
        system.push_back(std::move(le));
        system.push_back(std::move(ge));
      };
      // sum lambda_i g_i + sum mu_j h_j = 0 coordinatewise.
      for (int row = 0; row < d; ++row) {
        std::vector<Rational> coeff(nvars, Rational(0));
        for (int i = 0; i < p; ++i) coeff[i] = g[i][row];
        for (int j = 0; j < q; ++j) coeff[p + j] = h[j][row];
        push_eq(std::move(coeff), Rational(0));
      }
      // (sum lambda_i g_i)_k = sign.
      {
        std::vector<Rational> coeff(nvars, Rational(0));
        for (int i = 0; i < p; ++i) coeff[i] = g[i][k];
        push_eq(std::move(coeff), Rational(sign));
      }
      // lambda, mu >= 0.
      for (int v = 0; v < nvars; ++v) {
        std::vector<Rational> coeff(nvars, Rational(0));
        coeff[v] = -1;
        system.push_back(Inequality{std::move(coeff), Rational(0)});
      }
      if (feasible(std::move(system), nvars)) return false;
    }
  }
  return true;
}

bool is_salient(const PolyhedralCone& c) { return compatible(c, c); }

}  // namespace kstar
