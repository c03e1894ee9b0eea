#pragma once

// Small fixed pattern graphs F and rooted networks (R, H), with exact
// density/balancedness predicates and brute-force automorphism counts.
// Patterns are capped at 10 vertices; every subgraph predicate enumerates
// vertex subsets (induced subgraphs dominate density at a fixed vertex set).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rdg/rational.hpp"

namespace rdg {

class PatternGraph {
 public:
  static constexpr int kMaxVertices = 10;

  PatternGraph() = default;
  PatternGraph(int vcount, std::vector<std::pair<int, int>> edges) : vcount_(vcount) {
    if (vcount < 1 || vcount > kMaxVertices)
      throw std::invalid_argument("pattern graph must have 1..10 vertices");
    for (auto [a, b] : edges) add_edge(a, b);
  }

  void add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= vcount_ || b >= vcount_)
      throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("loops are not allowed");
    if (has_edge(a, b)) throw std::invalid_argument("duplicate edge");
    adj_[a] |= std::uint16_t(1) << b;
    adj_[b] |= std::uint16_t(1) << a;
    edges_.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(edges_.begin(), edges_.end());
  }

  int vertex_count() const { return vcount_; }
  int edge_count() const { return int(edges_.size()); }
  bool has_edge(int a, int b) const { return (adj_[a] >> b) & 1; }
  std::uint16_t row(int v) const { return adj_[v]; }
  int degree(int v) const { return std::popcount(adj_[v]); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int induced_edge_count(std::uint16_t subset) const {
    int e = 0;
    for (int v = 0; v < vcount_; ++v)
      if ((subset >> v) & 1) e += std::popcount(std::uint16_t(adj_[v] & subset));
    return e / 2;
  }

  bool operator==(const PatternGraph& o) const {
    return vcount_ == o.vcount_ && edges_ == o.edges_;
  }

 private:
  int vcount_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::array<std::uint16_t, kMaxVertices> adj_{};
};

class RootedNetwork {
 public:
  RootedNetwork() = default;
  RootedNetwork(PatternGraph h, std::vector<int> roots)
      : h_(std::move(h)), roots_(std::move(roots)) {
    if (roots_.empty()) throw std::invalid_argument("network needs at least one root");
    for (int r : roots_) {
      if (r < 0 || r >= h_.vertex_count())
        throw std::invalid_argument("root label out of range");
      if ((root_mask_ >> r) & 1) throw std::invalid_argument("duplicate root label");
      root_mask_ |= std::uint16_t(1) << r;
    }
    if (non_root_count() < 1)
      throw std::invalid_argument("network needs at least one non-root vertex");
  }

  const PatternGraph& graph() const { return h_; }
  const std::vector<int>& roots() const { return roots_; }
  std::uint16_t root_mask() const { return root_mask_; }
  bool is_root(int v) const { return (root_mask_ >> v) & 1; }

  int root_count() const { return int(roots_.size()); }                       // d
  int non_root_count() const { return h_.vertex_count() - root_count(); }     // k
  int extension_edge_count() const {                                          // l
    return h_.edge_count() - h_.induced_edge_count(root_mask_);
  }

  std::vector<int> non_roots() const {
    std::vector<int> ys;
    for (int v = 0; v < h_.vertex_count(); ++v)
      if (!is_root(v)) ys.push_back(v);
    return ys;
  }

 private:
  PatternGraph h_;
  std::vector<int> roots_;
  std::uint16_t root_mask_ = 0;
};

// -- densities and balancedness ---------------------------------------------

inline Rational density(const PatternGraph& f) {
  return make_rational(f.edge_count(), f.vertex_count());
}

inline Rational max_density(const PatternGraph& f) {
  const int v = f.vertex_count();
  long long best_e = 0, best_v = 1;
  for (std::uint16_t s = 1; s < (std::uint16_t(1) << v); ++s) {
    const long long e = f.induced_edge_count(s);
    const long long sv = std::popcount(s);
    if (e * best_v > best_e * sv) {
      best_e = e;
      best_v = sv;
    }
  }
  return make_rational(best_e, best_v);
}

inline bool is_strictly_balanced(const PatternGraph& f) {
  const int v = f.vertex_count();
  const long long e = f.edge_count();
  const std::uint16_t full = std::uint16_t((1u << v) - 1);
  for (std::uint16_t s = 1; s < full; ++s) {
    const long long es = f.induced_edge_count(s);
    const long long vs = std::popcount(s);
    if (es * v >= e * vs) return false;  // some proper subset ties or exceeds
  }
  return true;
}

inline bool is_balanced(const PatternGraph& f) {
  const int v = f.vertex_count();
  const long long e = f.edge_count();
  const std::uint16_t full = std::uint16_t((1u << v) - 1);
  for (std::uint16_t s = 1; s < full; ++s) {
    const long long es = f.induced_edge_count(s);
    const long long vs = std::popcount(s);
    if (es * v > e * vs) return false;
  }
  return true;
}

inline Rational network_density(const RootedNetwork& net) {
  return make_rational(net.extension_edge_count(), net.non_root_count());
}

// rho(R,S) < rho(R,H) for every S with R c S c V(H) strictly on both sides.
// S = R (no non-root) carries no density and is excluded.
inline bool is_strictly_balanced_network(const RootedNetwork& net) {
  const PatternGraph& h = net.graph();
  const int v = h.vertex_count();
  const std::uint16_t full = std::uint16_t((1u << v) - 1);
  const std::uint16_t rmask = net.root_mask();
  const long long l = net.extension_edge_count();
  const long long k = net.non_root_count();
  const long long root_edges = h.induced_edge_count(rmask);
  for (std::uint16_t s = 0; s <= full; ++s) {
    if ((s & rmask) != rmask || s == full || s == rmask) continue;
    const long long ls = h.induced_edge_count(std::uint16_t(s | rmask)) - root_edges;
    const long long ks = std::popcount(s) - std::popcount(rmask);
    if (ls * k >= l * ks) return false;
  }
  return true;
}

inline bool is_nontrivial(const RootedNetwork& net) {
  const PatternGraph& h = net.graph();
  const std::uint16_t non_root_mask = std::uint16_t(~net.root_mask());
  for (int r : net.roots())
    if ((h.row(r) & non_root_mask) == 0) return false;
  return true;
}

// -- automorphisms ------------------------------------------------------------

namespace detail {

inline long long count_automorphisms_rec(const PatternGraph& f, std::vector<int>& image,
                                         std::uint16_t used, int v) {
  const int n = f.vertex_count();
  if (v == n) return 1;
  if (image[v] >= 0)  // pre-pinned (root-fixing count)
    return count_automorphisms_rec(f, image, used, v + 1);
  long long total = 0;
  for (int w = 0; w < n; ++w) {
    if ((used >> w) & 1) continue;
    if (f.degree(w) != f.degree(v)) continue;
    bool ok = true;
    for (int u = 0; u < v && ok; ++u)
      if (image[u] >= 0 && f.has_edge(u, v) != f.has_edge(image[u], w)) ok = false;
    // also check consistency against pinned later vertices
    for (int u = v + 1; u < n && ok; ++u)
      if (image[u] >= 0 && f.has_edge(u, v) != f.has_edge(image[u], w)) ok = false;
    if (!ok) continue;
    image[v] = w;
    total += count_automorphisms_rec(f, image, std::uint16_t(used | (1u << w)), v + 1);
    image[v] = -1;
  }
  return total;
}

}  // namespace detail

inline long long automorphism_count(const PatternGraph& f) {
  std::vector<int> image(f.vertex_count(), -1);
  return detail::count_automorphisms_rec(f, image, 0, 0);
}

// Automorphisms of H fixing every root pointwise (c1 of the sharp threshold).
inline long long root_fixing_automorphism_count(const RootedNetwork& net) {
  const PatternGraph& h = net.graph();
  std::vector<int> image(h.vertex_count(), -1);
  std::uint16_t used = 0;
  for (int r : net.roots()) {
    image[r] = r;
    used |= std::uint16_t(1) << r;
  }
  return detail::count_automorphisms_rec(h, image, used, 0);
}

// -- parsing and fixtures -----------------------------------------------------

// Pattern file format, one directive per line:
//   v <count>
//   e <i> <j>        (one per edge)
//   roots <i1> ... <id>   (optional; makes it a network)
// '#' starts a comment line.
struct ParsedPattern {
  PatternGraph graph;
  std::optional<std::vector<int>> roots;

  bool is_network() const { return roots.has_value(); }
  RootedNetwork as_network() const {
    if (!roots) throw std::invalid_argument("pattern has no roots directive");
    return RootedNetwork(graph, *roots);
  }
};

inline ParsedPattern parse_pattern(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int vcount = -1;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<int>> roots;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("pattern parse error at line " + std::to_string(lineno) +
                                ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "v") {
      if (vcount >= 0) fail("duplicate v directive");
      if (!(ls >> vcount) || vcount < 1 || vcount > PatternGraph::kMaxVertices)
        fail("v needs a count in 1..10");
    } else if (tok == "e") {
      int a, b;
      if (vcount < 0) fail("e before v");
      if (!(ls >> a >> b)) fail("e needs two labels");
      if (a < 0 || b < 0 || a >= vcount || b >= vcount) fail("edge label out of range");
      if (a == b) fail("loop edge");
      for (auto [x, y] : edges)
        if (std::min(a, b) == std::min(x, y) && std::max(a, b) == std::max(x, y))
          fail("duplicate edge");
      edges.emplace_back(a, b);
    } else if (tok == "roots") {
      if (vcount < 0) fail("roots before v");
      if (roots) fail("duplicate roots directive");
      std::vector<int> rs;
      int r;
      while (ls >> r) {
        if (r < 0 || r >= vcount) fail("root label out of range");
        rs.push_back(r);
      }
      if (rs.empty()) fail("roots needs at least one label");
      roots = std::move(rs);
    } else {
      fail("unknown directive '" + tok + "'");
    }
  }
  if (vcount < 0) {
    lineno = 0;
    fail("missing v directive");
  }
  ParsedPattern p{PatternGraph(vcount, std::move(edges)), std::move(roots)};
  if (p.roots) (void)p.as_network();  // validate root invariants
  return p;
}

inline ParsedPattern parse_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open pattern file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pattern(ss.str());
}

// Built-in fixtures. Plain graphs: k2 p3 k3 p4 c4 k4.
// Networks: root-edge (d=1,k=1,l=1), cherry (d=2,k=1,l=2),
//           two-children (d=1,k=2,l=2), path-ext (d=2,k=2,l=3).
inline ParsedPattern fixture(const std::string& name) {
  if (name == "k2") return {PatternGraph(2, {{0, 1}}), std::nullopt};
  if (name == "p3") return {PatternGraph(3, {{0, 1}, {1, 2}}), std::nullopt};
  if (name == "k3") return {PatternGraph(3, {{0, 1}, {1, 2}, {0, 2}}), std::nullopt};
  if (name == "p4") return {PatternGraph(4, {{0, 1}, {1, 2}, {2, 3}}), std::nullopt};
  if (name == "c4") return {PatternGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), std::nullopt};
  if (name == "k4")
    return {PatternGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), std::nullopt};
  if (name == "root-edge") return {PatternGraph(2, {{0, 1}}), std::vector<int>{0}};
  if (name == "cherry")
    return {PatternGraph(3, {{0, 2}, {1, 2}}), std::vector<int>{0, 1}};
  if (name == "two-children")
    return {PatternGraph(3, {{0, 1}, {0, 2}}), std::vector<int>{0}};
  if (name == "path-ext")
    return {PatternGraph(4, {{0, 2}, {2, 3}, {3, 1}}), std::vector<int>{0, 1}};
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

inline PatternGraph fixture_pattern(const std::string& name) { return fixture(name).graph; }

inline RootedNetwork fixture_network(const std::string& name) {
  return fixture(name).as_network();
}

}  // namespace rdg
