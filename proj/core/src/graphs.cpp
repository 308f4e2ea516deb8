#include "kstar/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kstar/errors.hpp"

namespace kstar {

namespace {

std::string vertex_name(const AdmissibleGraph& g, int v) {
  if (v < g.n) return std::to_string(v + 1);
  int j = v - g.n;
  if (g.m == 1) return "M";
  if (g.m == 2) return j == 0 ? "L" : "R";
  return "M" + std::to_string(j + 1);
}

int parse_vertex(const AdmissibleGraph& g, const std::string& token) {
  if (token == "M" && g.m == 1) return g.n;
  if (token == "L" && g.m == 2) return g.n;
  if (token == "R" && g.m == 2) return g.n + 1;
  if (!token.empty() && token[0] == 'M' && g.m > 2) {
    int j = std::atoi(token.c_str() + 1);
    if (j >= 1 && j <= g.m) return g.n + j - 1;
  }
  char* end = nullptr;
  long v = std::strtol(token.c_str(), &end, 10);
  if (end && *end == '\0' && v >= 1 && v <= g.n) return static_cast<int>(v - 1);
  throw ParseError("graph dump: bad vertex token '" + token + "'");
}

constexpr long kTaggingCap = 1L << 20;

}  // namespace

void AdmissibleGraph::check_valid() const {
  if (n < 0 || m < 1) throw std::invalid_argument("graph: need n >= 0, m >= 1");
  if (static_cast<int>(targets.size()) != n)
    throw std::invalid_argument("graph: one target pair per first-kind vertex");
  for (int k = 0; k < n; ++k) {
    auto [a, b] = targets[k];
    if (a < 0 || a >= n + m || b < 0 || b >= n + m)
      throw std::invalid_argument("graph: target out of range");
    if (a == k || b == k) throw std::invalid_argument("graph: self loop");
    if (a == b) throw std::invalid_argument("graph: double edge");
  }
}

bool AdmissibleGraph::relevant() const {
  for (int v = 0; v < n; ++v)
    if (in_degree(v) > 1) return false;
  return true;
}

int AdmissibleGraph::in_degree(int v) const {
  int deg = 0;
  for (const auto& [a, b] : targets) deg += (a == v) + (b == v);
  return deg;
}

std::vector<int> AdmissibleGraph::first_kind_roots() const {
  std::vector<int> roots;
  for (int v = 0; v < n; ++v)
    if (in_degree(v) == 0) roots.push_back(v);
  return roots;
}

std::string AdmissibleGraph::dump() const {
  std::ostringstream os;
  os << n << ' ' << m << " :";
  for (const auto& [a, b] : targets)
    os << " (" << vertex_name(*this, a) << ',' << vertex_name(*this, b) << ')';
  return os.str();
}

AdmissibleGraph AdmissibleGraph::parse(const std::string& line) {
  std::istringstream is(line);
  AdmissibleGraph g;
  std::string colon;
  if (!(is >> g.n >> g.m >> colon) || colon != ":")
    throw ParseError("graph dump: expected 'n m : (a,b)...'");
  std::string rest;
  std::getline(is, rest);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    while (pos < rest.size() && (rest[pos] == ' ' || rest[pos] == '\t')) ++pos;
    if (pos >= rest.size()) break;
    if (rest[pos] != '(') throw ParseError("graph dump: expected '('");
    auto comma = rest.find(',', pos);
    auto close = rest.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw ParseError("graph dump: malformed pair");
    std::string ta = rest.substr(pos + 1, comma - pos - 1);
    std::string tb = rest.substr(comma + 1, close - comma - 1);
    g.targets.push_back({parse_vertex(g, ta), parse_vertex(g, tb)});
    pos = close + 1;
  }
  g.check_valid();
  return g;
}

std::vector<AdmissibleGraph> enumerate_graphs(int n, int m, bool relevant_only, int max_n) {
  if (n < 0 || m < 1) throw std::invalid_argument("enumerate_graphs: need n >= 0, m >= 1");
  if (n > max_n)
    throw SizeLimitExceeded("enumerate_graphs: n = " + std::to_string(n) +
                            " exceeds cap " + std::to_string(max_n));
  // Ordered target pairs available to one vertex, in canonical order.
  std::vector<AdmissibleGraph> out;
  AdmissibleGraph g;
  g.n = n;
  g.m = m;
  g.targets.assign(n, {0, 0});

  std::vector<std::array<int, 2>> choices;
  for (int a = 0; a < n + m; ++a)
    for (int b = 0; b < n + m; ++b)
      if (a != b) choices.push_back({a, b});

  std::vector<int> indeg(n, 0);
  auto recurse = [&](auto&& self, int k) -> void {
    if (k == n) {
      out.push_back(g);
      return;
    }
    for (const auto& [a, b] : choices) {
      if (a == k || b == k) continue;
      if (relevant_only) {
        if ((a < n && indeg[a] + 1 > 1) || (b < n && indeg[b] + 1 > 1)) continue;
      }
      g.targets[k] = {a, b};
      if (a < n) ++indeg[a];
      if (b < n) ++indeg[b];
      self(self, k + 1);
      if (a < n) --indeg[a];
      if (b < n) --indeg[b];
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

GraphClassification classify(const AdmissibleGraph& graph) {
  graph.check_valid();
  if (!graph.relevant())
    throw std::invalid_argument(
        "classify: wheel/root decomposition is defined for relevant graphs");
  GraphClassification cl;
  cl.roots = graph.first_kind_roots();
  for (int v = 0; v < graph.n + graph.m; ++v)
    if (graph.is_second_kind(v)) cl.leaves.push_back(v);

  // Connected components of the first-kind subgraph (undirected sense).
  std::vector<std::vector<int>> adj(graph.n);
  for (int v = 0; v < graph.n; ++v)
    for (int t : graph.targets[v])
      if (t < graph.n) {
        adj[v].push_back(t);
        adj[t].push_back(v);
      }
  std::vector<int> comp(graph.n, -1);
  int ncomp = 0;
  for (int start = 0; start < graph.n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> stack{start};
    comp[start] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }
  cl.components.assign(ncomp, {});
  for (int v = 0; v < graph.n; ++v) cl.components[comp[v]].push_back(v);

  // In a relevant graph each first-kind vertex has at most one incoming
  // edge, so walking predecessors either reaches a root or winds onto the
  // unique directed cycle of the component.
  std::vector<int> pred(graph.n, -1);
  for (int v = 0; v < graph.n; ++v)
    for (int t : graph.targets[v])
      if (t < graph.n) pred[t] = v;
  std::vector<int> state(graph.n, 0);  // 0 unseen, 1 on stack, 2 done
  for (int start = 0; start < graph.n; ++start) {
    if (state[start]) continue;
    std::vector<int> path;
    int v = start;
    while (v >= 0 && state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = pred[v];
    }
    if (v >= 0 && state[v] == 1) {
      // Cycle: the tail of `path` from v, reversed to follow edge direction.
      auto it = std::find(path.begin(), path.end(), v);
      std::vector<int> cycle(it, path.end());
      std::reverse(cycle.begin(), cycle.end());
      auto minit = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), minit, cycle.end());
      cl.wheels.push_back(cycle);
    }
    for (int p : path) state[p] = 2;
  }
  std::sort(cl.wheels.begin(), cl.wheels.end());

  // A component belongs to the wheel part iff it contains a wheel.
  std::vector<char> comp_has_wheel(ncomp, 0);
  for (const auto& wheel : cl.wheels) comp_has_wheel[comp[wheel[0]]] = 1;
  for (int vtx = 0; vtx < graph.n; ++vtx)
    (comp_has_wheel[comp[vtx]] ? cl.wheel_vertices : cl.root_vertices).push_back(vtx);

  auto induced = [&](const std::vector<int>& verts) {
    AdmissibleGraph part;
    part.n = static_cast<int>(verts.size());
    part.m = graph.m;
    std::vector<int> remap(graph.n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) remap[verts[i]] = static_cast<int>(i);
    for (int vtx : verts) {
      std::array<int, 2> pair{};
      for (int e = 0; e < 2; ++e) {
        int t = graph.targets[vtx][e];
        pair[e] = t < graph.n ? remap[t] : part.n + (t - graph.n);
      }
      part.targets.push_back(pair);
    }
    return part;
  };
  cl.wheel_part = induced(cl.wheel_vertices);
  cl.root_part = induced(cl.root_vertices);
  return cl;
}

MultiPoly graph_symbol(const AdmissibleGraph& graph, const LieAlgebra& g,
                       const VarBlocks& blocks) {
  graph.check_valid();
  if (graph.m != 1 && graph.m != 2)
    throw std::invalid_argument("graph_symbol: operators only for m in {1,2}");
  if (graph.m == 2 && blocks.Y.empty())
    throw std::invalid_argument("graph_symbol: blocks lack a Y block");
  int d = g.dim();
  int edges = 2 * graph.n;
  if (std::pow(double(d), double(edges)) > double(kTaggingCap))
    throw SizeLimitExceeded("graph_symbol: d^(2n) taggings exceed cap");

  MultiPoly total(blocks.ring);
  MultiPoly scale = g.scale_poly(blocks.ring);

  // Tags, one per edge: edge 2k is (k -> targets[k][0]), edge 2k+1 the other.
  std::vector<int> tag(edges, 0);
  const Rational half(1, 2);
  while (true) {
    // Incoming tag per first-kind vertex: -1 none, -2 at least two (term 0).
    std::vector<int> incoming(graph.n, -1);
    Mono mono(blocks.ring->size(), 0);
    bool zero = false;
    for (int e = 0; e < edges && !zero; ++e) {
      int target = graph.targets[e / 2][e % 2];
      if (target < graph.n) {
        incoming[target] = incoming[target] == -1 ? tag[e] : -2;
        zero = incoming[target] == -2;  // second derivative of a linear tensor
      } else {
        int block = target - graph.n;
        int var = block == 0 ? blocks.X[tag[e]] : blocks.Y[tag[e]];
        mono[var] = static_cast<std::uint8_t>(mono[var] + 1);
      }
    }
    if (!zero) {
      MultiPoly term = MultiPoly::monomial(blocks.ring, mono, Rational(1));
      for (int k = 0; k < graph.n && !zero; ++k) {
        int i = tag[2 * k], j = tag[2 * k + 1];
        if (incoming[k] >= 0) {
          Rational c = half * g.c(i, j, incoming[k]);
          if (c == 0) {
            zero = true;
            break;
          }
          term *= c;
        } else {
          MultiPoly gamma(blocks.ring);
          for (int s = 0; s < d; ++s) {
            Rational c = half * g.c(i, j, s);
            if (c != 0) gamma += c * MultiPoly::variable(blocks.ring, blocks.s[s]);
          }
          if (gamma.is_zero()) {
            zero = true;
            break;
          }
          term = term * gamma;
        }
      }
      if (!zero) total += term;
    }
    // Next tagging.
    int e = 0;
    while (e < edges && ++tag[e] == d) tag[e++] = 0;
    if (e == edges) break;
  }
  // One overall scale factor per first-kind vertex.
  MultiPoly scaled = total;
  for (int k = 0; k < graph.n; ++k) scaled = scaled * scale;
  return scaled;
}

MultiPoly bidiff_apply(const AdmissibleGraph& graph, const LieAlgebra& g,
                       const MultiPoly& u, const MultiPoly& v, const VarBlocks& blocks) {
  graph.check_valid();
  if (graph.m != 2) throw std::invalid_argument("bidiff_apply: needs m = 2");
  int d = g.dim();
  int edges = 2 * graph.n;
  if (std::pow(double(d), double(edges)) > double(kTaggingCap))
    throw SizeLimitExceeded("bidiff_apply: d^(2n) taggings exceed cap");

  RingPtr ring = blocks.ring;
  MultiPoly scale = g.scale_poly(ring);
  const Rational half(1, 2);
  MultiPoly total(ring);

  std::vector<int> tag(edges, 0);
  while (true) {
    // Multiply each vertex distribution by the coordinate functions of its
    // incoming tags, then convolve (= multiply in S(g)).
    std::vector<std::vector<int>> incoming(graph.n + 2);
    for (int e = 0; e < edges; ++e) incoming[graph.targets[e / 2][e % 2]].push_back(tag[e]);

    auto multiply_by_coordinates = [&](MultiPoly dist, const std::vector<int>& tags) {
      // d_p . X_a = d/dx_a p, once per incoming edge.
      for (int a : tags) dist = dist.derivative(blocks.s[a]);
      return dist;
    };

    MultiPoly term = multiply_by_coordinates(u, incoming[graph.n]);
    bool zero = term.is_zero();
    if (!zero) {
      MultiPoly vpart = multiply_by_coordinates(v, incoming[graph.n + 1]);
      zero = vpart.is_zero();
      term = term * vpart;
    }
    for (int k = 0; k < graph.n && !zero; ++k) {
      int i = tag[2 * k], j = tag[2 * k + 1];
      MultiPoly gamma(ring);
      for (int s = 0; s < d; ++s) {
        Rational c = half * g.c(i, j, s);
        if (c != 0) gamma += c * MultiPoly::variable(ring, blocks.s[s]);
      }
      gamma = multiply_by_coordinates(gamma, incoming[k]);
      zero = gamma.is_zero();
      term = term * gamma;
    }
    if (!zero) total += term;

    int e = 0;
    while (e < edges && ++tag[e] == d) tag[e++] = 0;
    if (e == edges) break;
  }
  for (int k = 0; k < graph.n; ++k) total = total * scale;
  return total;
}

MultiPoly apply_symbol(const MultiPoly& symbol, const MultiPoly& u, const MultiPoly& v,
                       const VarBlocks& blocks) {
  RingPtr ring = blocks.ring;
  MultiPoly out(ring);
  for (const auto& [m, c] : symbol.terms()) {
    MultiPoly du = u, dv = v;
    Mono rest = m;
    for (int i = 0; i < blocks.dim; ++i) {
      for (int r = 0; r < m[blocks.X[i]] && !du.is_zero(); ++r) du = du.derivative(blocks.s[i]);
      if (!blocks.Y.empty())
        for (int r = 0; r < m[blocks.Y[i]] && !dv.is_zero(); ++r)
          dv = dv.derivative(blocks.s[i]);
      rest[blocks.X[i]] = 0;
      if (!blocks.Y.empty()) rest[blocks.Y[i]] = 0;
    }
    if (du.is_zero() || dv.is_zero()) continue;
    out += c * (MultiPoly::monomial(ring, rest, Rational(1)) * (du * dv));
  }
  return out;
}

}  // namespace kstar
