#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "kstar/lie.hpp"
#include "kstar/poly.hpp"

namespace kstar {

/// Labeled oriented graph of G_{n,m}: n first-kind vertices each emitting
/// an ordered pair of edges, m second-kind vertices emitting none.
/// Vertex encoding: 0..n-1 first kind, n+j second kind (j = 0 is L or M,
/// j = 1 is R). Identity is the target table, i.e. the dump line.
struct AdmissibleGraph {
  int n = 0;
  int m = 0;
  std::vector<std::array<int, 2>> targets;  // ordered edge pair per first-kind vertex

  auto operator<=>(const AdmissibleGraph&) const = default;

  bool is_second_kind(int v) const { return v >= n; }
  /// No self loops, no double edges, targets in range.
  void check_valid() const;
  /// At most one edge ends at any first-kind vertex.
  bool relevant() const;
  /// First-kind vertices with no incoming edge.
  std::vector<int> first_kind_roots() const;
  int in_degree(int v) const;

  /// "n m : (a,b)(c,d)..." with second-kind vertices named L,R (m=2)
  /// or M (m=1).
  std::string dump() const;
  static AdmissibleGraph parse(const std::string& line);
};

/// Complete, duplicate-free, deterministically ordered list of G_{n,m}.
/// Hard cap n <= max_n (SizeLimitExceeded beyond).
std::vector<AdmissibleGraph> enumerate_graphs(int n, int m, bool relevant_only,
                                              int max_n = 4);

/// Wheel / root structure of a relevant graph. Simple components are the
/// connected components of the first-kind subgraph together with their
/// edges into the second-kind vertices; each one either contains a wheel
/// (a directed cycle) and no roots, or is a rooted tree with no wheel.
struct GraphClassification {
  std::vector<int> roots;                    // first-kind, no incoming edge
  std::vector<int> leaves;                   // vertices emitting no edge
  std::vector<std::vector<int>> wheels;      // directed cycles, rotated canonically
  std::vector<std::vector<int>> components;  // first-kind vertex partition
  std::vector<int> wheel_vertices;           // vertices of cycle components
  std::vector<int> root_vertices;            // the rest
  AdmissibleGraph wheel_part;                // induced subgraph on wheel_vertices
  AdmissibleGraph root_part;                 // induced subgraph on root_vertices
};

GraphClassification classify(const AdmissibleGraph& graph);

/// Symbol of the m-differential operator attached to a relevant graph
/// (m in {1,2}): the sum over all edge taggings with the Poisson tensor
/// gamma^{ij} = 1/2 c_ij^k x_k placed at first-kind vertices. Lives on
/// the X (and Y) and x blocks of `blocks`; non-relevant graphs give 0.
/// Throws SizeLimitExceeded when d^(2n) exceeds an internal cap.
MultiPoly graph_symbol(const AdmissibleGraph& graph, const LieAlgebra& g,
                       const VarBlocks& blocks);

/// The action of F(B_Gamma) on a pair of point-supported distributions,
/// evaluated graphically: per tagging, multiply the distribution at each
/// vertex by the coordinate functions of its incoming edge tags and
/// convolve. u, v live on the x block of `blocks`.
MultiPoly bidiff_apply(const AdmissibleGraph& graph, const LieAlgebra& g,
                       const MultiPoly& u, const MultiPoly& v, const VarBlocks& blocks);

/// Applies a bidifferential-operator symbol to a pair of polynomials:
/// each symbol term x^c X^b Y^d acts as u,v -> x^c (d^b u)(d^d v).
MultiPoly apply_symbol(const MultiPoly& symbol, const MultiPoly& u, const MultiPoly& v,
                       const VarBlocks& blocks);

}  // namespace kstar
