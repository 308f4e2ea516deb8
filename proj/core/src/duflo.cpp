#include "kstar/duflo.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

std::string TauMode::key() const {
  if (trivial) return "trivial";
  std::ostringstream os;
  os << "w";
  for (const auto& w : weights) os << ':' << rational_to_string(w);
  return os.str();
}

VarBlocks duflo_blocks(int dim) { return make_blocks(dim, true, false, false, true); }

VarBlocks star_blocks(int dim) { return make_blocks(dim, true, true, true, true); }

namespace {

std::vector<MultiPoly> coordinate_vector(const VarBlocks& blocks) {
  std::vector<MultiPoly> x;
  for (int i = 0; i < blocks.dim; ++i)
    x.push_back(MultiPoly::variable(blocks.ring, blocks.X[i]));
  return x;
}

using SeriesMatrix = std::vector<std::vector<TruncSeries>>;

SeriesMatrix matrix_product(const SeriesMatrix& a, const SeriesMatrix& b) {
  std::size_t d = a.size();
  RingPtr ring = a[0][0].ring();
  int order = a[0][0].order();
  SeriesMatrix out(d, std::vector<TruncSeries>(d, TruncSeries::constant(ring, Rational(0), order)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

bool matrix_is_zero(const SeriesMatrix& a) {
  for (const auto& row : a)
    for (const auto& entry : row)
      if (!entry.is_zero()) return false;
  return true;
}

TruncSeries matrix_trace(const SeriesMatrix& a) {
  TruncSeries tr = a[0][0];
  for (std::size_t i = 1; i < a.size(); ++i) tr = tr + a[i][i];
  return tr;
}

std::mutex duflo_mutex;
std::map<std::tuple<std::string, int, std::string>, DufloSeries>& duflo_memo() {
  static std::map<std::tuple<std::string, int, std::string>, DufloSeries> memo;
  return memo;
}
std::map<std::tuple<std::string, int, std::string>, StarSymbol>& symbol_memo() {
  static std::map<std::tuple<std::string, int, std::string>, StarSymbol> memo;
  return memo;
}

}  // namespace

TruncSeries q_series(const LieAlgebra& g, int order) {
  VarBlocks blocks = duflo_blocks(g.dim());
  auto x = coordinate_vector(blocks);
  auto ad = ad_matrix(g, x);
  int d = g.dim();
  SeriesMatrix m(d, std::vector<TruncSeries>(d, TruncSeries::constant(blocks.ring, Rational(0), order)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = TruncSeries(ad[i][j], order);

  // sinh(ad/2)/(ad/2) = sum_k (ad)^(2k) / (4^k (2k+1)!).
  SeriesMatrix ratio(d, std::vector<TruncSeries>(d, TruncSeries::constant(blocks.ring, Rational(0), order)));
  for (int i = 0; i < d; ++i)
    ratio[i][i] = TruncSeries::constant(blocks.ring, Rational(1), order);
  SeriesMatrix m2 = matrix_product(m, m);
  SeriesMatrix power = m2;
  Rational four_k(1);
  for (int k = 1; 2 * k <= order; ++k) {
    if (matrix_is_zero(power)) break;
    four_k *= 4;
    Rational coeff = Rational(1) / (four_k * factorial(static_cast<unsigned>(2 * k + 1)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ratio[i][j] = ratio[i][j] + power[i][j] * coeff;
    power = matrix_product(power, m2);
  }
  return matrix_series_det_sqrt(ratio);
}

TruncSeries tau_series(const LieAlgebra& g, int order, const TauMode& mode) {
  VarBlocks blocks = duflo_blocks(g.dim());
  if (mode.trivial) return TruncSeries::constant(blocks.ring, Rational(1), order);
  auto x = coordinate_vector(blocks);
  auto ad = ad_matrix(g, x);
  int d = g.dim();
  SeriesMatrix m(d, std::vector<TruncSeries>(d, TruncSeries::constant(blocks.ring, Rational(0), order)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = TruncSeries(ad[i][j], order);

  TruncSeries exponent = TruncSeries::constant(blocks.ring, Rational(0), order);
  SeriesMatrix power = m;
  Rational two_n(1);
  for (int n = 1; n <= order && n <= static_cast<int>(mode.weights.size()); ++n) {
    if (n > 1) power = matrix_product(power, m);
    two_n *= 2;
    if (mode.weights[n - 1] == 0) continue;
    exponent = exponent + matrix_trace(power) * (mode.weights[n - 1] / two_n);
  }
  return series_exp(exponent);
}

TruncSeries r_series(const LieAlgebra& g, int order, const TauMode& mode) {
  TruncSeries q = q_series(g, order);
  if (mode.trivial) return q;
  return q * series_inverse(tau_series(g, order, mode));
}

DufloSeries duflo_series(const LieAlgebra& g, int order, const TauMode& mode) {
  std::tuple<std::string, int, std::string> memo_key{g.fingerprint(), order, mode.key()};
  {
    std::lock_guard<std::mutex> lock(duflo_mutex);
    auto it = duflo_memo().find(memo_key);
    if (it != duflo_memo().end()) return it->second;
  }
  DufloSeries out;
  out.order = order;
  out.mode = mode;
  out.q = q_series(g, order);
  out.tau = tau_series(g, order, mode);
  out.r = mode.trivial ? out.q : out.q * series_inverse(out.tau);
  std::lock_guard<std::mutex> lock(duflo_mutex);
  return duflo_memo().emplace(std::move(memo_key), std::move(out)).first->second;
}

namespace {

// r(t V) for V the X block, t Z_t, etc.: substitute the duflo-block series
// into star_blocks with the given images for X1..Xd.
TruncSeries substitute_into_star(const TruncSeries& series, const VarBlocks& from,
                                 const VarBlocks& to, const std::vector<MultiPoly>& images,
                                 int order) {
  std::vector<std::optional<MultiPoly>> slots(from.ring->size());
  for (int i = 0; i < from.dim; ++i) slots[from.X[i]] = images[i];
  return TruncSeries(series.poly().substituted(to.ring, slots, order), order);
}

}  // namespace

TruncSeries symbol_Ar(const LieAlgebra& g, int order) {
  VarBlocks sb = star_blocks(g.dim());
  CbhJet zt = bch_scaled(g, order);
  MultiPoly exponent(sb.ring);
  for (int k = 0; k < g.dim(); ++k) {
    MultiPoly comp = zt.z[k].poly().embedded(sb.ring);
    comp -= MultiPoly::variable(sb.ring, sb.X[k]);
    comp -= MultiPoly::variable(sb.ring, sb.Y[k]);
    exponent += comp * MultiPoly::variable(sb.ring, sb.s[k]);
  }
  return series_exp(TruncSeries(std::move(exponent), order));
}

TruncSeries symbol_Aw(const LieAlgebra& g, int order, const TauMode& mode) {
  VarBlocks sb = star_blocks(g.dim());
  VarBlocks db = duflo_blocks(g.dim());
  TruncSeries r = r_series(g, order, mode);
  CbhJet zt = bch_scaled(g, order);

  MultiPoly t = MultiPoly::variable(sb.ring, sb.t);
  std::vector<MultiPoly> tX, tY, tZ;
  for (int i = 0; i < g.dim(); ++i) {
    tX.push_back(t * MultiPoly::variable(sb.ring, sb.X[i]));
    tY.push_back(t * MultiPoly::variable(sb.ring, sb.Y[i]));
    tZ.push_back(t * zt.z[i].poly().embedded(sb.ring));  // = Z(tX,tY) coordinates
  }
  TruncSeries r_tX = substitute_into_star(r, db, sb, tX, order);
  TruncSeries r_tY = substitute_into_star(r, db, sb, tY, order);
  TruncSeries r_tZ = substitute_into_star(r, db, sb, tZ, order);
  return r_tX * r_tY * series_inverse(r_tZ);
}

StarSymbol star_symbol(const LieAlgebra& g, int order, const TauMode& mode) {
  std::tuple<std::string, int, std::string> memo_key{g.fingerprint(), order, mode.key()};
  {
    std::lock_guard<std::mutex> lock(duflo_mutex);
    auto it = symbol_memo().find(memo_key);
    if (it != symbol_memo().end()) return it->second;
  }
  StarSymbol sym;
  sym.blocks = star_blocks(g.dim());
  sym.order = order;
  sym.Aw = symbol_Aw(g, order, mode);
  sym.Ar = symbol_Ar(g, order);
  sym.A = sym.Aw * sym.Ar;
  std::lock_guard<std::mutex> lock(duflo_mutex);
  return symbol_memo().emplace(std::move(memo_key), std::move(sym)).first->second;
}

MultiPoly sigma_n(const StarSymbol& symbol, int n) {
  if (n < 0 || n > symbol.order)
    throw std::invalid_argument("sigma_n: n out of range");
  MultiPoly slice = symbol.A.poly().coefficient_of(symbol.blocks.t, n);
  slice *= factorial(static_cast<unsigned>(n));
  return slice;
}

}  // namespace kstar
