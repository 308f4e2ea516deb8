#include "kstar/lie.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

namespace {

// FNV-1a over the canonical serialization; cache key, not cryptographic.
std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

LieAlgebra LieAlgebra::validate(int dim, std::vector<std::string> basis_names,
                                const std::vector<StructEntry>& entries) {
  if (dim <= 0) throw std::invalid_argument("algebra dimension must be positive");
  if (basis_names.empty()) {
    for (int i = 1; i <= dim; ++i) basis_names.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(basis_names.size()) != dim)
    throw std::invalid_argument("basis name count does not match dimension");

  LieAlgebra g;
  g.dim_ = dim;
  g.names_ = std::move(basis_names);

  for (const auto& entry : entries) {
    if (entry.i < 1 || entry.i > dim || entry.j < 1 || entry.j > dim || entry.k < 1 ||
        entry.k > dim)
      throw std::invalid_argument("structure constant index out of range");
    if (entry.value == 0) continue;
    if (entry.i == entry.j)
      throw AntisymmetryViolation(entry.i, entry.j, entry.k,
                                  "nonzero diagonal structure constant c_" +
                                      std::to_string(entry.i) + std::to_string(entry.j) + "^" +
                                      std::to_string(entry.k));
    int i = entry.i - 1, j = entry.j - 1;
    Rational value = entry.value;
    if (i > j) {
      std::swap(i, j);
      value = -value;
    }
    std::array<int, 3> key{i, j, entry.k - 1};
    auto it = g.table_.find(key);
    if (it != g.table_.end()) {
      if (it->second != value)
        throw AntisymmetryViolation(entry.i, entry.j, entry.k,
                                    "inconsistent entries for c_" + std::to_string(entry.i) +
                                        std::to_string(entry.j) + "^" + std::to_string(entry.k));
    } else {
      g.table_.emplace(key, std::move(value));
    }
  }

  // Jacobi: sum_k (c_ij^k c_kl^m + c_jl^k c_ki^m + c_li^k c_kj^m) = 0.
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int l = j + 1; l < dim; ++l)
        for (int m = 0; m < dim; ++m) {
          Rational residual(0);
          for (int k = 0; k < dim; ++k) {
            residual += g.c(i, j, k) * g.c(k, l, m);
            residual += g.c(j, l, k) * g.c(k, i, m);
            residual += g.c(l, i, k) * g.c(k, j, m);
          }
          if (residual != 0)
            throw JacobiViolation(i + 1, j + 1, l + 1, m + 1, rational_to_string(residual),
                                  "Jacobi identity fails at (i,j,l,m) = (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                      std::to_string(l + 1) + "," + std::to_string(m + 1) +
                                      "), residual " + rational_to_string(residual));
        }

  g.refresh_fingerprint();
  return g;
}

Rational LieAlgebra::c(int i, int j, int k) const {
  if (i == j) return Rational(0);
  if (i > j) {
    auto it = table_.find({j, i, k});
    return it == table_.end() ? Rational(0) : Rational(-it->second);
  }
  auto it = table_.find({i, j, k});
  return it == table_.end() ? Rational(0) : it->second;
}

MultiPoly LieAlgebra::scale_poly(const RingPtr& ring) const {
  if (scale_.tpow == 0) return MultiPoly::constant(ring, scale_.coef);
  int t = ring->index_of("t");
  if (t < 0)
    throw std::invalid_argument("formal bracket scale needs a 't' variable in the ring");
  Mono m(ring->size(), 0);
  m[t] = static_cast<std::uint8_t>(scale_.tpow);
  return MultiPoly::monomial(ring, m, scale_.coef);
}

void LieAlgebra::refresh_fingerprint() {
  std::ostringstream os;
  os << "dim " << dim_ << '\n';
  for (const auto& n : names_) os << n << ' ';
  os << '\n';
  for (const auto& [key, value] : table_)
    os << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << rational_to_string(value) << '\n';
  os << "scale " << rational_to_string(scale_.coef) << " t^" << scale_.tpow << '\n';
  fingerprint_ = fnv1a_hex(os.str());
}

LieAlgebra LieAlgebra::scaled(const Rational& t) const {
  LieAlgebra g = *this;
  g.scale_.coef *= t;
  if (g.scale_.coef == 0) g.scale_ = BracketScale{Rational(0), 0};
  g.refresh_fingerprint();
  return g;
}

LieAlgebra LieAlgebra::scaled_formal() const {
  LieAlgebra g = *this;
  g.scale_.tpow += 1;
  g.refresh_fingerprint();
  return g;
}

LieAlgebra scale_bracket(const LieAlgebra& g, const ScaleParam& t) {
  return t.formal ? g.scaled_formal() : g.scaled(t.value);
}

std::vector<std::vector<MultiPoly>> ad_matrix(const LieAlgebra& g,
                                              std::span<const MultiPoly> x) {
  int d = g.dim();
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("ad_matrix: coefficient vector has wrong length");
  RingPtr ring = x[0].ring();
  MultiPoly scale = g.scale_poly(ring);
  std::vector<std::vector<MultiPoly>> m(d, std::vector<MultiPoly>(d, MultiPoly(ring)));
  for (const auto& [key, value] : g.table()) {
    auto [i, j, k] = key;
    // c_ij^k contributes x_i to (k,j) and -x_j to (k,i).
    m[k][j] += value * (scale * x[i]);
    m[k][i] -= value * (scale * x[j]);
  }
  return m;
}

std::vector<MultiPoly> bracket(const LieAlgebra& g, std::span<const MultiPoly> x,
                               std::span<const MultiPoly> y) {
  int d = g.dim();
  if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
    throw std::invalid_argument("bracket: coefficient vector has wrong length");
  RingPtr ring = x[0].ring();
  MultiPoly scale = g.scale_poly(ring);
  std::vector<MultiPoly> out(d, MultiPoly(ring));
  for (const auto& [key, value] : g.table()) {
    auto [i, j, k] = key;
    out[k] += value * (scale * (x[i] * y[j] - x[j] * y[i]));
  }
  return out;
}

MultiPoly trace_ad_product(const LieAlgebra& g,
                           const std::vector<std::vector<MultiPoly>>& xs) {
  if (xs.empty()) throw std::invalid_argument("trace_ad_product: need at least one argument");
  std::span<const MultiPoly> first(xs.front());
  RingPtr ring = first[0].ring();
  auto m = ad_matrix(g, first);
  for (std::size_t a = 1; a < xs.size(); ++a) {
    auto next = ad_matrix(g, std::span<const MultiPoly>(xs[a]));
    int d = g.dim();
    std::vector<std::vector<MultiPoly>> prod(d, std::vector<MultiPoly>(d, MultiPoly(ring)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) prod[i][j] += m[i][k] * next[k][j];
    m = std::move(prod);
  }
  MultiPoly tr(ring);
  for (int i = 0; i < g.dim(); ++i) tr += m[i][i];
  return tr;
}

LieAlgebra abelian_algebra(int dim) {
  std::vector<std::string> names;
  for (int i = 1; i <= dim; ++i) names.push_back("e" + std::to_string(i));
  return LieAlgebra::validate(dim, std::move(names), {});
}

LieAlgebra heisenberg_algebra() {
  return LieAlgebra::validate(3, {"x", "y", "z"}, {{1, 2, 3, Rational(1)}});
}

LieAlgebra sl2_algebra() {
  return LieAlgebra::validate(3, {"h", "e", "f"},
                              {{1, 2, 2, Rational(2)},
                               {1, 3, 3, Rational(-2)},
                               {2, 3, 1, Rational(1)}});
}

LieAlgebra solvable2_algebra() {
  return LieAlgebra::validate(2, {"x", "y"}, {{1, 2, 2, Rational(1)}});
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  if (!a.scale().is_one() || !b.scale().is_one())
    throw std::invalid_argument("direct_sum of scaled algebras is not supported");
  int d = a.dim() + b.dim();
  std::vector<std::string> names;
  for (const auto& n : a.basis_names()) names.push_back(n + "'");
  for (const auto& n : b.basis_names()) names.push_back(n + "''");
  std::vector<StructEntry> entries;
  for (const auto& [key, value] : a.table())
    entries.push_back({key[0] + 1, key[1] + 1, key[2] + 1, value});
  int off = a.dim();
  for (const auto& [key, value] : b.table())
    entries.push_back({key[0] + 1 + off, key[1] + 1 + off, key[2] + 1 + off, value});
  return LieAlgebra::validate(d, std::move(names), entries);
}

LieAlgebra bundled_algebra(const std::string& name) {
  if (name == "heisenberg") return heisenberg_algebra();
  if (name == "sl2") return sl2_algebra();
  if (name == "solvable2") return solvable2_algebra();
  if (name.rfind("abelian", 0) == 0) {
    int d = std::atoi(name.c_str() + 7);
    if (d >= 1 && d <= 8) return abelian_algebra(d);
  }
  throw ParseError("unknown bundled algebra: " + name);
}

std::vector<std::string> bundled_algebra_names() {
  return {"abelian1", "abelian2", "abelian3", "heisenberg", "sl2", "solvable2"};
}

LieAlgebra read_algebra(std::istream& in) {
  int dim = -1;
  std::vector<std::string> names;
  std::vector<StructEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "dim") {
      if (!(ls >> dim) || dim <= 0)
        throw ParseError("algebra file line " + std::to_string(lineno) + ": bad dimension");
    } else if (first == "basis") {
      std::string n;
      while (ls >> n) names.push_back(n);
    } else {
      StructEntry e;
      std::string value;
      std::istringstream es(line);
      if (!(es >> e.i >> e.j >> e.k >> value))
        throw ParseError("algebra file line " + std::to_string(lineno) +
                         ": expected 'i j k p/q'");
      std::string extra;
      if (es >> extra)
        throw ParseError("algebra file line " + std::to_string(lineno) + ": trailing input");
      e.value = rational_from_string(value);
      entries.push_back(std::move(e));
    }
  }
  if (dim < 0) throw ParseError("algebra file: missing 'dim' line");
  return LieAlgebra::validate(dim, std::move(names), entries);
}

LieAlgebra read_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open algebra file: " + path);
  return read_algebra(in);
}

void write_algebra(std::ostream& out, const LieAlgebra& g) {
  out << "dim " << g.dim() << '\n';
  out << "basis";
  for (const auto& n : g.basis_names()) out << ' ' << n;
  out << '\n';
  for (const auto& [key, value] : g.table())
    out << key[0] + 1 << ' ' << key[1] + 1 << ' ' << key[2] + 1 << ' '
        << rational_to_string(value) << '\n';
}

}  // namespace kstar
