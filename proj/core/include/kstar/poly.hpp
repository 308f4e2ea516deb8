#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kstar/rational.hpp"

namespace kstar {

/// A fixed, ordered list of variable names together with truncation
/// weights. Weight-1 variables count toward series truncation degree,
/// weight-0 variables (deformation parameter t, S(g) value variables)
/// do not. Rings are immutable and shared.
class PolyRing {
public:
  PolyRing(std::vector<std::string> names, std::vector<int> weights);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  int weight(std::size_t i) const { return weights_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  /// Index of a variable name, or -1 when absent.
  int index_of(const std::string& name) const;

  bool same(const PolyRing& other) const;

private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> names, std::vector<int> weights);
/// All weights 1.
RingPtr make_ring(std::vector<std::string> names);

/// Exponent vector, one entry per ring variable. Exponents are capped at
/// 255; polynomial arithmetic checks for overflow.
using Mono = std::vector<std::uint8_t>;

int total_degree(const Mono& m);
int weighted_degree(const PolyRing& ring, const Mono& m);

/// Graded lexicographic order: total degree first, then the exponent
/// vector itself, earlier variables dominating. Iteration over a
/// polynomial's term map therefore starts at the constant term.
struct GradedLexLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

/// Sparse multivariate polynomial over Q with a canonical term order.
/// Zero coefficients are never stored.
class MultiPoly {
public:
  using TermMap = std::map<Mono, Rational, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(RingPtr ring, Rational value);
  static MultiPoly variable(RingPtr ring, int index);
  static MultiPoly monomial(RingPtr ring, const Mono& m, Rational coeff);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Max total degree, -1 for the zero polynomial.
  int degree() const;
  /// Max weighted degree, -1 for the zero polynomial.
  int weighted_deg() const;
  /// Min weighted degree over terms, large value for the zero polynomial.
  int weighted_valuation() const;
  /// Max degree counting only the given variables.
  int degree_in(std::span<const int> vars) const;

  Rational coefficient(const Mono& m) const;
  /// Constant coefficient.
  Rational constant_term() const;

  bool operator==(const MultiPoly& other) const;
  bool operator!=(const MultiPoly& other) const { return !(*this == other); }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    return mul(a, b, -1);
  }

  MultiPoly& operator*=(const Rational& scalar);
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

  /// Product truncated to weighted degree <= max_wdeg (no truncation for -1).
  static MultiPoly mul(const MultiPoly& a, const MultiPoly& b, int max_wdeg);

  void add_term(const Mono& m, const Rational& coeff);

  MultiPoly derivative(int var) const;
  /// Drops terms of weighted degree > max_wdeg.
  MultiPoly truncated(int max_wdeg) const;
  /// Keeps only terms whose exponent of `var` equals `exponent`, with that
  /// variable divided out.
  MultiPoly coefficient_of(int var, int exponent) const;
  /// Keeps only terms of weighted degree == wdeg.
  MultiPoly weighted_slice(int wdeg) const;

  /// Moves the polynomial into `target`, matching variables by name.
  /// Throws if a used variable is missing in the target ring.
  MultiPoly embedded(RingPtr target) const;

  /// Substitutes images[i] (a polynomial over `target`) for variable i;
  /// variables without an image are mapped by name. Truncates the result
  /// and all intermediates to weighted degree max_wdeg when >= 0.
  MultiPoly substituted(const RingPtr& target,
                        const std::vector<std::optional<MultiPoly>>& images,
                        int max_wdeg = -1) const;

  /// Canonical text form, e.g. "1 + 1/2 * x1^2 x2 - t". Inverse of parse.
  std::string to_string() const;
  static MultiPoly parse(RingPtr ring, const std::string& text);

private:
  RingPtr ring_;
  TermMap terms_;
};

/// Standard variable layout for an algebra of dimension d. The blocks,
/// in ring order: X1..Xd (coordinates of the first g argument, weight 1),
/// Y1..Yd (second argument, weight 1), x1..xd (S(g) generators, weight 0),
/// t (deformation parameter, weight 0). Absent blocks are empty / -1.
struct VarBlocks {
  RingPtr ring;
  int dim = 0;
  std::vector<int> X, Y, s;
  int t = -1;

  std::span<const int> Xs() const { return X; }
  std::span<const int> Ys() const { return Y; }
  std::span<const int> ss() const { return s; }
};

VarBlocks make_blocks(int dim, bool with_X, bool with_Y, bool with_s, bool with_t);

/// Pairing of a point-supported distribution with a polynomial test
/// function on matching variable blocks: <d_p, phi> = sum_a p_a a! phi_a,
/// where a runs over exponents of p on p_vars matched index-wise against
/// phi on phi_vars. p must use only p_vars and phi only phi_vars
/// (std::invalid_argument otherwise).
Rational pair_moments(const MultiPoly& p, std::span<const int> p_vars,
                      const MultiPoly& phi, std::span<const int> phi_vars);

}  // namespace kstar
