#include "kstar/series.hpp"

#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

TruncSeries::TruncSeries(MultiPoly poly, int order)
    : poly_(poly.truncated(order)), order_(order) {
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
}

TruncSeries TruncSeries::constant(RingPtr ring, Rational value, int order) {
  return TruncSeries(MultiPoly::constant(std::move(ring), std::move(value)), order);
}

bool TruncSeries::operator==(const TruncSeries& other) const {
  return order_ == other.order_ && poly_ == other.poly_;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  int order = std::min(a.order(), b.order());
  return TruncSeries(a.poly() + b.poly(), order);
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  int order = std::min(a.order(), b.order());
  return TruncSeries(a.poly() - b.poly(), order);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  int order = std::min(a.order(), b.order());
  return TruncSeries(MultiPoly::mul(a.poly(), b.poly(), order), order);
}

TruncSeries operator*(const TruncSeries& a, const Rational& s) {
  MultiPoly p = a.poly();
  p *= s;
  return TruncSeries(std::move(p), a.order());
}

TruncSeries operator*(const Rational& s, const TruncSeries& a) { return a * s; }

TruncSeries TruncSeries::truncated(int order) const {
  if (order >= order_) return *this;
  return TruncSeries(poly_, order);
}

TruncSeries series_exp(const TruncSeries& s) {
  if (s.poly().weighted_valuation() < 1)
    throw NonzeroConstantTerm("series_exp requires weighted valuation >= 1, got constant-level terms: " +
                              s.poly().to_string());
  int n = s.order();
  TruncSeries out = TruncSeries::constant(s.ring(), Rational(1), n);
  TruncSeries power = out;
  Rational kfact(1);
  for (int k = 1; k <= n; ++k) {
    power = power * s;
    if (power.is_zero()) break;
    kfact *= k;
    out = out + power * (Rational(1) / kfact);
  }
  return out;
}

namespace {

// Splits S with unit constant part as 1 + u, u of weighted valuation >= 1.
TruncSeries unit_complement(const TruncSeries& s, const char* who) {
  MultiPoly u = s.poly();
  u -= MultiPoly::constant(s.ring(), Rational(1));
  if (!u.is_zero() && u.weighted_valuation() < 1) {
    std::string msg = std::string(who) + " requires weighted-degree-0 part equal to 1: " +
                      s.poly().to_string();
    if (std::string(who) == "series_inverse") throw SeriesInversionFailure(msg);
    throw NonzeroConstantTerm(msg);
  }
  return TruncSeries(std::move(u), s.order());
}

}  // namespace

TruncSeries series_log(const TruncSeries& s) {
  TruncSeries u = unit_complement(s, "series_log");
  int n = s.order();
  TruncSeries out = TruncSeries::constant(s.ring(), Rational(0), n);
  TruncSeries power = TruncSeries::constant(s.ring(), Rational(1), n);
  for (int k = 1; k <= n; ++k) {
    power = power * u;
    if (power.is_zero()) break;
    Rational coeff = Rational((k % 2) ? 1 : -1) / Rational(k);
    out = out + power * coeff;
  }
  return out;
}

TruncSeries series_inverse(const TruncSeries& s) {
  TruncSeries u = unit_complement(s, "series_inverse");
  int n = s.order();
  TruncSeries out = TruncSeries::constant(s.ring(), Rational(1), n);
  TruncSeries power = out;
  for (int k = 1; k <= n; ++k) {
    power = power * u;
    if (power.is_zero()) break;
    out = out + power * Rational((k % 2) ? -1 : 1);
  }
  return out;
}

TruncSeries matrix_series_det_sqrt(const std::vector<std::vector<TruncSeries>>& m) {
  std::size_t d = m.size();
  for (const auto& row : m)
    if (row.size() != d) throw std::invalid_argument("det_sqrt: matrix not square");
  if (d == 0) throw std::invalid_argument("det_sqrt: empty matrix");
  int order = m[0][0].order();
  RingPtr ring = m[0][0].ring();
  // Constant part must be the identity.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational c0 = m[i][j].poly().truncated(0).constant_term();
      MultiPoly level0 = m[i][j].poly() -
                         MultiPoly::constant(ring, c0);
      bool off_diag_level0 = !level0.is_zero() && level0.weighted_valuation() < 1;
      if (c0 != Rational(i == j ? 1 : 0) || off_diag_level0)
        throw NonUnipotentConstantTerm("det_sqrt: constant part of matrix is not the identity");
    }
  // tr log(M)
  TruncSeries trace_log = TruncSeries::constant(ring, Rational(0), order);
  // U = M - I
  std::vector<std::vector<TruncSeries>> u = m;
  for (std::size_t i = 0; i < d; ++i)
    u[i][i] = u[i][i] - TruncSeries::constant(ring, Rational(1), order);
  std::vector<std::vector<TruncSeries>> power = u;
  for (int k = 1; k <= order; ++k) {
    if (k > 1) {
      std::vector<std::vector<TruncSeries>> next(
          d, std::vector<TruncSeries>(d, TruncSeries::constant(ring, Rational(0), order)));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t l = 0; l < d; ++l) next[i][j] = next[i][j] + power[i][l] * u[l][j];
      power = std::move(next);
    }
    TruncSeries tr = TruncSeries::constant(ring, Rational(0), order);
    bool zero = true;
    for (std::size_t i = 0; i < d; ++i) {
      tr = tr + power[i][i];
      for (std::size_t j = 0; j < d; ++j) zero = zero && power[i][j].is_zero();
    }
    trace_log = trace_log + tr * (Rational((k % 2) ? 1 : -1) / Rational(k));
    if (zero) break;
  }
  return series_exp(trace_log * Rational(1, 2));
}

TruncSeries matrix_series_det(const std::vector<std::vector<TruncSeries>>& m) {
  std::size_t d = m.size();
  if (d == 1) return m[0][0];
  RingPtr ring = m[0][0].ring();
  int order = m[0][0].order();
  TruncSeries det = TruncSeries::constant(ring, Rational(0), order);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<TruncSeries>> minor;
    for (std::size_t r = 1; r < d; ++r) {
      std::vector<TruncSeries> row;
      for (std::size_t c = 0; c < d; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    TruncSeries term = m[0][j] * matrix_series_det(minor);
    det = (j % 2) ? det - term : det + term;
  }
  return det;
}

MultiPoly distribution_times_function(const MultiPoly& p, std::span<const int> x_vars,
                                      const TruncSeries& f, std::span<const int> X_vars) {
  if (x_vars.size() != X_vars.size())
    throw std::invalid_argument("distribution_times_function: block size mismatch");
  const RingPtr& ring = p.ring();
  int pdeg = p.degree_in(x_vars);
  if (f.order() < pdeg)
    throw InsufficientTruncationOrder(
        "distribution_times_function: series order " + std::to_string(f.order()) +
        " below distribution degree " + std::to_string(pdeg));

  // Map f's non-block variables into p's ring by name.
  const PolyRing& fring = *f.ring();
  std::vector<int> carry(fring.size(), -1);
  std::vector<char> in_block(fring.size(), 0);
  for (int v : X_vars) in_block[v] = 1;

  MultiPoly out(ring);
  for (const auto& [mf, cf] : f.poly().terms()) {
    // beta = exponents on the X block; rest carries over by name.
    Mono beta(x_vars.size());
    int beta_deg = 0;
    for (std::size_t i = 0; i < X_vars.size(); ++i) {
      beta[i] = mf[X_vars[i]];
      beta_deg += beta[i];
    }
    if (beta_deg > pdeg) continue;
    Mono rest(ring->size(), 0);
    for (std::size_t v = 0; v < fring.size(); ++v) {
      if (in_block[v] || mf[v] == 0) continue;
      if (carry[v] == -1) carry[v] = ring->index_of(fring.name(v));
      if (carry[v] < 0) throw std::invalid_argument(
          "distribution_times_function: result ring lacks variable " + fring.name(v));
      int s = rest[carry[v]] + mf[v];
      if (s > 255) throw std::overflow_error("exponent overflow");
      rest[carry[v]] = static_cast<std::uint8_t>(s);
    }

    for (const auto& [mp, cp] : p.terms()) {
      // Falling factorial alpha!/(alpha-beta)! on the x block.
      Rational factor(1);
      bool fits = true;
      Mono result = mp;
      for (std::size_t i = 0; i < x_vars.size() && fits; ++i) {
        int a = mp[x_vars[i]], b = beta[i];
        if (b > a) {
          fits = false;
          break;
        }
        for (int s = 0; s < b; ++s) factor *= (a - s);
        result[x_vars[i]] = static_cast<std::uint8_t>(a - b);
      }
      if (!fits) continue;
      for (std::size_t v = 0; v < rest.size(); ++v) {
        int s = result[v] + rest[v];
        if (s > 255) throw std::overflow_error("exponent overflow");
        result[v] = static_cast<std::uint8_t>(s);
      }
      out.add_term(result, cf * cp * factor);
    }
  }
  return out;
}

}  // namespace kstar
