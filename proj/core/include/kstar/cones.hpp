#pragma once

#include <string>
#include <vector>

#include "kstar/rational.hpp"

namespace kstar {

/// Finitely generated polyhedral cone in Q^d: all nonnegative rational
/// combinations of the generators. Canonical form: generators primitive
/// (integer entries, gcd 1), duplicate-free, sorted; zero generators are
/// dropped, so the empty list is the cone {0}.
class PolyhedralCone {
public:
  PolyhedralCone(int dim, std::vector<std::vector<Rational>> generators);

  int dim() const { return dim_; }
  const std::vector<std::vector<Rational>>& generators() const { return generators_; }
  bool is_origin() const { return generators_.empty(); }

  bool operator==(const PolyhedralCone& other) const = default;

  /// "cone d=2 gens=(1,0),(0,1)"; a cone with no generators prints and
  /// parses as "cone d=2 gens=".
  std::string to_string() const;
  static PolyhedralCone parse(const std::string& text);

private:
  int dim_;
  std::vector<std::vector<Rational>> generators_;
};

/// -C: generators negated.
PolyhedralCone minus(const PolyhedralCone& c);

/// The support compatibility gate: cone(C1) n -cone(C2) = {0}, decided
/// exactly by Fourier-Motzkin feasibility of reaching a point with some
/// coordinate pinned to +-1.
bool compatible(const PolyhedralCone& c1, const PolyhedralCone& c2);

/// C n -C = {0}.
bool is_salient(const PolyhedralCone& c);

}  // namespace kstar
