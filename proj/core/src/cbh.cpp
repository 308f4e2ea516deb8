#include "kstar/cbh.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

namespace {

// Composition sum of the Dynkin series for one word (letters 'A'/'B').
// Enumerates splittings into blocks A^r B^s with r+s >= 1 and accumulates
// (-1)^(n-1) / (n * m * prod r! s!).
void kappa_recurse(const std::string& word, std::size_t pos, int blocks,
                   const Rational& factor, Rational& total) {
  std::size_t m = word.size();
  if (pos == m) {
    Rational sign((blocks % 2) ? 1 : -1);
    total += sign * factor / Rational(blocks * static_cast<int>(m));
    return;
  }
  std::size_t max_a = pos;
  while (max_a < m && word[max_a] == 'A') ++max_a;
  for (std::size_t r = 0; pos + r <= max_a; ++r) {
    std::size_t after_a = pos + r;
    std::size_t max_b = after_a;
    while (max_b < m && word[max_b] == 'B') ++max_b;
    for (std::size_t s = (r == 0) ? 1 : 0; after_a + s <= max_b; ++s) {
      Rational f = factor / (factorial(static_cast<unsigned>(r)) *
                             factorial(static_cast<unsigned>(s)));
      kappa_recurse(word, after_a + s, blocks + 1, f, total);
    }
  }
}

Rational dynkin_coefficient(const std::string& word) {
  Rational total(0);
  kappa_recurse(word, 0, 0, Rational(1), total);
  return total;
}

struct BchWorkspace {
  const LieAlgebra& g;
  const VarBlocks& blocks;
  std::map<std::string, std::vector<MultiPoly>> suffix;  // right-nested brackets

  const std::vector<MultiPoly>& nested_bracket(const std::string& word) {
    auto it = suffix.find(word);
    if (it != suffix.end()) return it->second;
    std::vector<MultiPoly> value;
    if (word.size() == 1) {
      const auto& vars = word[0] == 'A' ? blocks.X : blocks.Y;
      for (int i = 0; i < blocks.dim; ++i)
        value.push_back(MultiPoly::variable(blocks.ring, vars[i]));
    } else {
      const auto& head = nested_bracket(word.substr(0, 1));
      const auto& tail = nested_bracket(word.substr(1));
      value = bracket(g, head, tail);
    }
    return suffix.emplace(word, std::move(value)).first->second;
  }
};

std::mutex bch_mutex;
std::map<std::pair<std::string, int>, CbhJet>& bch_memo() {
  static std::map<std::pair<std::string, int>, CbhJet> memo;
  return memo;
}

}  // namespace

CbhJet bch(const LieAlgebra& g, int order) {
  if (order < 1) throw std::invalid_argument("bch: order must be >= 1");
  {
    std::lock_guard<std::mutex> lock(bch_mutex);
    auto it = bch_memo().find({g.fingerprint(), order});
    if (it != bch_memo().end()) return it->second;
  }

  CbhJet jet;
  jet.algebra = g;
  jet.order = order;
  jet.blocks = make_blocks(g.dim(), true, true, false, true);

  std::vector<MultiPoly> acc(g.dim(), MultiPoly(jet.blocks.ring));
  BchWorkspace ws{g, jet.blocks, {}};
  // All words over {A,B} of length 1..order.
  for (int len = 1; len <= order; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::string word;
      for (int p = len - 1; p >= 0; --p) word.push_back((bits >> p) & 1 ? 'B' : 'A');
      Rational kappa = dynkin_coefficient(word);
      if (kappa == 0) continue;
      const auto& br = ws.nested_bracket(word);
      for (int k = 0; k < g.dim(); ++k) acc[k] += kappa * br[k];
    }
  }
  for (auto& comp : acc) jet.z.emplace_back(std::move(comp), order);

  std::lock_guard<std::mutex> lock(bch_mutex);
  return bch_memo().emplace(std::make_pair(g.fingerprint(), order), std::move(jet))
      .first->second;
}

CbhJet bch_scaled(const LieAlgebra& g, int order) {
  if (g.scale().tpow != 0)
    throw std::invalid_argument("bch_scaled: algebra already carries a formal scale");
  CbhJet base = bch(g, order);
  CbhJet jet;
  jet.algebra = g.scaled_formal();
  jet.order = order;
  jet.blocks = base.blocks;
  int t = jet.blocks.t;
  for (const auto& comp : base.z) {
    MultiPoly scaled(jet.blocks.ring);
    for (const auto& [m, c] : comp.poly().terms()) {
      int k = weighted_degree(*jet.blocks.ring, m);
      Mono mt = m;
      mt[t] = static_cast<std::uint8_t>(mt[t] + k - 1);
      scaled.add_term(mt, c);
    }
    jet.z.emplace_back(std::move(scaled), order);
  }
  return jet;
}

MultiPoly compose_with_jet(const MultiPoly& phi, std::span<const int> phi_vars,
                           const CbhJet& jet) {
  if (static_cast<int>(phi_vars.size()) != jet.blocks.dim)
    throw std::invalid_argument("compose_with_jet: block size mismatch");
  std::vector<std::optional<MultiPoly>> images(phi.ring()->size());
  for (int i = 0; i < jet.blocks.dim; ++i) images[phi_vars[i]] = jet.z[i].poly();
  return phi.substituted(jet.blocks.ring, images, jet.order);
}

std::filesystem::path cbh_cache_path(const std::filesystem::path& dir,
                                     const LieAlgebra& g, int order) {
  return dir / ("cbh-" + g.fingerprint() + "-N" + std::to_string(order) + ".txt");
}

void cbh_cache_store(const std::filesystem::path& dir, const CbhJet& jet) {
  std::filesystem::create_directories(dir);
  std::ofstream out(cbh_cache_path(dir, jet.algebra, jet.order));
  if (!out) throw Error("cannot write CBH cache file");
  out << "algebra " << jet.algebra.fingerprint() << '\n';
  out << "order " << jet.order << '\n';
  out << "dim " << jet.algebra.dim() << '\n';
  for (const auto& comp : jet.z) out << comp.poly().to_string() << '\n';
}

std::optional<CbhJet> cbh_cache_load(const std::filesystem::path& dir,
                                     const LieAlgebra& g, int order) {
  std::ifstream in(cbh_cache_path(dir, g, order));
  if (!in) return std::nullopt;
  std::string keyword, fp;
  int file_order = 0, dim = 0;
  in >> keyword >> fp;
  if (keyword != "algebra" || fp != g.fingerprint()) return std::nullopt;
  in >> keyword >> file_order;
  if (keyword != "order" || file_order != order) return std::nullopt;
  in >> keyword >> dim;
  if (keyword != "dim" || dim != g.dim()) return std::nullopt;
  std::string line;
  std::getline(in, line);
  CbhJet jet;
  jet.algebra = g;
  jet.order = order;
  jet.blocks = make_blocks(dim, true, true, false, true);
  for (int k = 0; k < dim; ++k) {
    if (!std::getline(in, line)) return std::nullopt;
    jet.z.emplace_back(MultiPoly::parse(jet.blocks.ring, line), order);
  }
  return jet;
}

CbhJet bch_cached(const LieAlgebra& g, int order, const std::filesystem::path& dir) {
  if (auto cached = cbh_cache_load(dir, g, order)) return *cached;
  CbhJet jet = bch(g, order);
  cbh_cache_store(dir, jet);
  return jet;
}

}  // namespace kstar
