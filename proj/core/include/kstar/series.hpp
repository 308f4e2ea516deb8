#pragma once

#include <span>
#include <vector>

#include "kstar/poly.hpp"

namespace kstar {

/// A polynomial jet: all stored terms have weighted degree <= order, and
/// every operation truncates eagerly. Weight-0 ring variables (t, the
/// S(g) value variables) ride along and never count toward the order.
class TruncSeries {
public:
  TruncSeries() = default;
  TruncSeries(MultiPoly poly, int order);
  static TruncSeries constant(RingPtr ring, Rational value, int order);

  const MultiPoly& poly() const { return poly_; }
  int order() const { return order_; }
  const RingPtr& ring() const { return poly_.ring(); }
  bool is_zero() const { return poly_.is_zero(); }

  bool operator==(const TruncSeries& other) const;

  TruncSeries operator-() const { return TruncSeries(-poly_, order_); }
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const Rational& s);
  friend TruncSeries operator*(const Rational& s, const TruncSeries& a);

  /// Lowers (never raises) the order.
  TruncSeries truncated(int order) const;

private:
  MultiPoly poly_;
  int order_ = 0;
};

/// exp(S) = sum S^k / k!. Requires every term of S to have weighted
/// degree >= 1 (NonzeroConstantTerm otherwise), which makes the sum finite.
TruncSeries series_exp(const TruncSeries& s);

/// log(S) for S with weighted-degree-0 part exactly 1 (NonzeroConstantTerm
/// otherwise).
TruncSeries series_log(const TruncSeries& s);

/// 1/S for S with weighted-degree-0 part exactly 1 (SeriesInversionFailure
/// otherwise).
TruncSeries series_inverse(const TruncSeries& s);

/// det(M)^(1/2) = exp(1/2 tr log M) for a square matrix of series whose
/// weighted-degree-0 part is the identity (NonUnipotentConstantTerm
/// otherwise).
TruncSeries matrix_series_det_sqrt(const std::vector<std::vector<TruncSeries>>& m);

/// Plain determinant by cofactor expansion, truncated; used as the
/// counterpart of matrix_series_det_sqrt in checks.
TruncSeries matrix_series_det(const std::vector<std::vector<TruncSeries>>& m);

/// The right action of multiplication by a function on a point-supported
/// distribution: d_p . f, with p on the x_vars block of its ring and f on
/// the X_vars block of its own ring (matched index-wise). Equivalently
/// f(d/dx) applied to p. Variables of f outside X_vars (e.g. t) transfer
/// into p's ring by name. Requires f.order() >= degree of p in x_vars
/// (InsufficientTruncationOrder otherwise).
MultiPoly distribution_times_function(const MultiPoly& p, std::span<const int> x_vars,
                                      const TruncSeries& f, std::span<const int> X_vars);

}  // namespace kstar
