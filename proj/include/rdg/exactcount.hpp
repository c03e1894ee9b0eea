#pragma once

// Exact embedding and extension counting.
//
// The block-profile counter evaluates, for finite n, the sum of products of
// binomial coefficients over all integer solutions of the per-vertex linear
// systems: placing non-root vertex y_s against the current partition of
// coordinate positions into blocks contributes one equation of sum n/4 per
// required adjacency to an already-placed vertex, the total-weight equation
// of sum n/2, and box constraints 0 <= u_j <= w_j; accepted solutions refine
// each block into its (ones, zeros) halves and recurse.
//
// These sums count adjacency-respecting assignment chains and do NOT enforce
// injectivity; a chain may reuse the image of a non-adjacent earlier vertex.
// Both semantics are exposed: the chain count directly, and an injective
// count obtained by quotient recursion over independent-set partitions.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdg/bigint.hpp"
#include "rdg/distgraph.hpp"
#include "rdg/embed.hpp"
#include "rdg/patterns.hpp"
#include "rdg/rational.hpp"

namespace rdg {

// -- partition vectors --------------------------------------------------------

// Blocks B_1..B_{2^d} classify coordinate positions by the bit pattern the
// root words show there; patterns are ordered lexicographically descending,
// first root most significant ((1,..,1) first, (0,..,0) last).
struct PartitionVector {
  int d = 0;
  std::vector<int> block_sizes;  // 2^d entries, summing to n
  std::vector<int> x;            // deviations from [n/2^d] (last entry balances)
};

inline PartitionVector partition_vector(int n, const std::vector<VertexWord>& roots) {
  if (roots.empty()) throw std::invalid_argument("partition_vector: roots must be nonempty");
  const int d = int(roots.size());
  if (d > 6) throw std::invalid_argument("partition_vector: at most 6 roots supported");
  PartitionVector pv;
  pv.d = d;
  pv.block_sizes.assign(std::size_t(1) << d, 0);
  for (int i = 0; i < n; ++i) {
    unsigned m = 0;
    for (int r = 0; r < d; ++r) m |= unsigned((roots[r] >> i) & 1) << (d - 1 - r);
    ++pv.block_sizes[(std::size_t(1) << d) - 1 - m];
  }
  const int base = n >> d;  // [n / 2^d]
  const int blocks = int(pv.block_sizes.size());
  pv.x.resize(blocks);
  for (int j = 0; j < blocks - 1; ++j) pv.x[j] = pv.block_sizes[j] - base;
  pv.x[blocks - 1] = pv.block_sizes[blocks - 1] - n + (blocks - 1) * base;
  return pv;
}

// Reconstruct block sizes from a given x-vector (for x-addressed queries).
inline PartitionVector partition_vector_from_x(int n, const std::vector<int>& x) {
  const int blocks = int(x.size());
  if (blocks < 2 || (blocks & (blocks - 1)) != 0)
    throw std::invalid_argument("x-vector length must be a power of two >= 2");
  int d = 0;
  while ((1 << d) < blocks) ++d;
  const int base = n >> d;
  PartitionVector pv;
  pv.d = d;
  pv.x = x;
  pv.block_sizes.resize(blocks);
  long long sum = 0;
  for (int j = 0; j < blocks - 1; ++j) {
    pv.block_sizes[j] = base + x[j];
    sum += pv.block_sizes[j];
  }
  pv.block_sizes[blocks - 1] = n - (blocks - 1) * base + x[blocks - 1];
  sum += pv.block_sizes[blocks - 1];
  for (int b : pv.block_sizes)
    if (b < 0) throw std::invalid_argument("x-vector implies a negative block size");
  if (sum != n) throw std::invalid_argument("x-vector entries must sum to zero");
  return pv;
}

// -- block-profile counter ------------------------------------------------------

namespace detail {

class BlockProfileCounter {
 public:
  // earlier_neighbors[s] lists, for the (s+1)-th placed non-root, the placed
  // positions (roots first, then earlier non-roots) it must be adjacent to.
  BlockProfileCounter(int n, int d, std::vector<std::vector<int>> earlier_neighbors)
      : n_(n), half_(n / 2), quarter_(n / 4), d_(d),
        earlier_neighbors_(std::move(earlier_neighbors)) {}

  BigCount run(const std::vector<int>& level1_blocks) {
    total_ = 0;
    BigCount one = 1;
    solve_level(0, level1_blocks, one);
    return total_;
  }

 private:
  struct Level {
    std::vector<std::vector<char>> member;   // equation x block membership
    std::vector<long long> rhs;
    std::vector<std::vector<long long>> cap; // suffix capacity per equation
    std::vector<long long> residual;
    std::vector<int> u;
  };

  void solve_level(int s, const std::vector<int>& w, const BigCount& prefix) {
    const int blocks = int(w.size());
    const int placed = d_ + s;  // vertices that shaped the current blocks
    Level lv;
    const auto& req = earlier_neighbors_[s];
    const int eqs = int(req.size()) + 1;  // adjacency equations + total weight
    lv.member.assign(eqs, std::vector<char>(blocks, 0));
    lv.rhs.assign(eqs, 0);
    for (int e = 0; e + 1 < eqs; ++e) {
      const int t = req[e];
      for (int jj = 0; jj < blocks; ++jj) {
        const unsigned pattern = unsigned(blocks - 1 - jj);
        lv.member[e][jj] = char((pattern >> (placed - 1 - t)) & 1u);
      }
      lv.rhs[e] = quarter_;
    }
    for (int jj = 0; jj < blocks; ++jj) lv.member[eqs - 1][jj] = 1;
    lv.rhs[eqs - 1] = half_;

    lv.cap.assign(eqs, std::vector<long long>(blocks + 1, 0));
    for (int e = 0; e < eqs; ++e)
      for (int jj = blocks - 1; jj >= 0; --jj)
        lv.cap[e][jj] = lv.cap[e][jj + 1] + (lv.member[e][jj] ? w[jj] : 0);
    lv.residual = lv.rhs;
    lv.u.assign(blocks, 0);
    dfs_position(s, w, lv, 0, prefix);
  }

  void dfs_position(int s, const std::vector<int>& w, Level& lv, int pos,
                    const BigCount& product) {
    const int blocks = int(w.size());
    if (pos == blocks) {
      if (s + 1 == int(earlier_neighbors_.size())) {
        total_ += product;
        return;
      }
      std::vector<int> refined(std::size_t(blocks) * 2);
      for (int jj = 0; jj < blocks; ++jj) {
        refined[2 * jj] = lv.u[jj];
        refined[2 * jj + 1] = w[jj] - lv.u[jj];
      }
      solve_level(s + 1, refined, product);
      return;
    }
    long long lo = 0, hi = w[pos];
    const int eqs = int(lv.residual.size());
    for (int e = 0; e < eqs; ++e) {
      if (!lv.member[e][pos]) continue;
      hi = std::min(hi, lv.residual[e]);
      lo = std::max(lo, lv.residual[e] - lv.cap[e][pos + 1]);
    }
    for (long long u = lo; u <= hi; ++u) {
      lv.u[pos] = int(u);
      for (int e = 0; e < eqs; ++e)
        if (lv.member[e][pos]) lv.residual[e] -= u;
      if (u == 0 && w[pos] == 0) {
        dfs_position(s, w, lv, pos + 1, product);
      } else {
        const BigCount next = product * binomial(w[pos], int(u));
        dfs_position(s, w, lv, pos + 1, next);
      }
      for (int e = 0; e < eqs; ++e)
        if (lv.member[e][pos]) lv.residual[e] += u;
    }
  }

  int n_, half_, quarter_, d_;
  std::vector<std::vector<int>> earlier_neighbors_;
  BigCount total_;
};

// Placement order for non-roots: repeatedly take the one with the most
// already-placed neighbors (roots count as placed). Counts are order
// independent; this just keeps the systems tight.
inline std::vector<int> nonroot_order(const PatternGraph& h, std::uint16_t root_mask) {
  std::vector<int> order;
  std::uint16_t placed = root_mask;
  const int v = h.vertex_count();
  for (;;) {
    int best = -1, best_links = -1;
    for (int u = 0; u < v; ++u) {
      if ((placed >> u) & 1) continue;
      const int links = std::popcount(std::uint16_t(h.row(u) & placed));
      if (links > best_links) {
        best_links = links;
        best = u;
      }
    }
    if (best < 0) break;
    order.push_back(best);
    placed |= std::uint16_t(1) << best;
  }
  return order;
}

inline std::vector<std::vector<int>> earlier_neighbor_lists(const PatternGraph& h,
                                                            const std::vector<int>& roots,
                                                            const std::vector<int>& ys) {
  std::vector<std::vector<int>> lists(ys.size());
  for (std::size_t s = 0; s < ys.size(); ++s) {
    for (std::size_t t = 0; t < roots.size(); ++t)
      if (h.has_edge(roots[t], ys[s])) lists[s].push_back(int(t));
    for (std::size_t t = 0; t < s; ++t)
      if (h.has_edge(ys[t], ys[s])) lists[s].push_back(int(roots.size() + t));
  }
  return lists;
}

}  // namespace detail

// Exact value of the block-profile sum for a rooted network at a given
// partition vector (chain semantics, no injectivity).
inline BigCount blockprofile_rooted_count(const RootedNetwork& net,
                                          const PartitionVector& pv, int n) {
  if (n % 4 != 0) throw std::invalid_argument("blockprofile: n must be divisible by 4");
  if (pv.d != net.root_count())
    throw std::invalid_argument("blockprofile: partition vector arity (" +
                                std::to_string(pv.d) + ") does not match network roots (" +
                                std::to_string(net.root_count()) + ")");
  if (int(pv.block_sizes.size()) != (1 << pv.d))
    throw std::invalid_argument("blockprofile: bad partition vector block count");
  long long sum = 0;
  for (int b : pv.block_sizes) sum += b;
  if (sum != n) throw std::invalid_argument("blockprofile: block sizes must sum to n");

  std::uint16_t root_mask = net.root_mask();
  const std::vector<int> ys = detail::nonroot_order(net.graph(), root_mask);
  detail::BlockProfileCounter counter(
      n, net.root_count(),
      detail::earlier_neighbor_lists(net.graph(), net.roots(), ys));
  return counter.run(pv.block_sizes);
}

// -- unrooted counts ------------------------------------------------------------

// Chain count for an unrooted pattern: the first vertex sees one block {1..n}
// and only the total-weight equation, contributing C(n, n/2) = N.
inline BigCount blockprofile_chain_count(const PatternGraph& f, int n) {
  if (n % 4 != 0) throw std::invalid_argument("blockprofile: n must be divisible by 4");
  const std::vector<int> ys = detail::nonroot_order(f, 0);
  detail::BlockProfileCounter counter(n, 0,
                                      detail::earlier_neighbor_lists(f, {}, ys));
  return counter.run({n});
}

namespace detail {

inline std::uint64_t pattern_key(const PatternGraph& f) {
  std::uint64_t key = std::uint64_t(f.vertex_count()) << 56;
  for (auto [a, b] : f.edges()) key |= std::uint64_t(1) << (a * 8 + b);
  return key;
}

// All partitions of {0..v-1} into independent classes, discrete partition
// excluded. Calls fn(labels) where labels[i] is the class of vertex i.
template <class Fn>
void for_each_independent_partition(const PatternGraph& f, Fn&& fn) {
  const int v = f.vertex_count();
  std::vector<int> labels(v, 0);
  auto rec = [&](auto&& self, int i, int classes) -> void {
    if (i == v) {
      if (classes < v) fn(labels);
      return;
    }
    for (int c = 0; c <= classes; ++c) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (labels[j] == c && f.has_edge(j, i)) ok = false;  // class must stay independent
      if (!ok) continue;
      labels[i] = c;
      self(self, i + 1, std::max(classes, c + 1));
    }
  };
  rec(rec, 0, 0);
}

inline PatternGraph quotient(const PatternGraph& f, const std::vector<int>& labels) {
  int classes = 0;
  for (int c : labels) classes = std::max(classes, c + 1);
  PatternGraph q(classes, {});
  for (auto [a, b] : f.edges()) {
    const int ca = labels[a], cb = labels[b];
    if (ca == cb) throw std::logic_error("quotient would create a loop");
    if (!q.has_edge(ca, cb)) q.add_edge(ca, cb);
  }
  return q;
}

inline BigCount injective_unrooted(const PatternGraph& f, int n,
                                   std::map<std::uint64_t, BigCount>& memo) {
  const std::uint64_t key = pattern_key(f);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  // chains where some vertices coincide factor through a smaller quotient
  BigCount count = blockprofile_chain_count(f, n);
  for_each_independent_partition(f, [&](const std::vector<int>& labels) {
    count -= injective_unrooted(quotient(f, labels), n, memo);
  });
  memo[key] = count;
  return count;
}

}  // namespace detail

// Exact count of adjacency-respecting vertex-sequence assignments, computed
// purely from block profiles. injective=true recovers the monomorphism count
// by subtracting, per independent-set partition, the chains that collapse
// onto the corresponding quotient pattern.
inline BigCount blockprofile_unrooted_count(const PatternGraph& f, int n, bool injective) {
  if (f.vertex_count() > 8)
    throw std::invalid_argument("blockprofile_unrooted_count: pattern capped at 8 vertices");
  if (!injective) return blockprofile_chain_count(f, n);
  std::map<std::uint64_t, BigCount> memo;
  return detail::injective_unrooted(f, n, memo);
}

// -- brute-force oracles ----------------------------------------------------------

namespace detail {

// Index-addressed view over the complete distance graph. Reuses the graph's
// opt-in neighbor cache when present, otherwise builds its own lists.
struct DenseView {
  const DistGraph* g;
  std::vector<std::vector<std::uint32_t>> own_lists;

  explicit DenseView(const DistGraph& graph) : g(&graph) {
    if (graph.n() > DistGraph::kMaxNeighborCacheN)
      throw std::invalid_argument("brute-force oracle limited to n <= 16");
    if (graph.has_neighbor_cache()) return;
    const auto& table = graph.vertex_table();
    const std::uint32_t n = std::uint32_t(table.size());
    own_lists.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (graph.adjacent(table[i], table[j])) own_lists[i].push_back(j);
  }

  std::uint32_t vertex_count() const { return std::uint32_t(g->vertex_table().size()); }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const {
    return g->has_neighbor_cache() ? g->cached_neighbors(v) : own_lists[v];
  }
  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    return g->adjacent(g->vertex_table()[a], g->vertex_table()[b]);
  }
};

}  // namespace detail

// Backtracking count of root-anchored placements of the network's non-roots,
// enforcing every edge of H with at least one non-root endpoint. With
// injective=true all d+k images must also be pairwise distinct.
inline BigCount bruteforce_rooted_count(const RootedNetwork& net,
                                        const std::vector<VertexWord>& root_images,
                                        const DistGraph& g, bool injective) {
  if (int(root_images.size()) != net.root_count())
    throw std::invalid_argument("bruteforce_rooted_count: root image arity mismatch");
  g.validate_roots(root_images);
  for (std::size_t i = 0; i < root_images.size(); ++i)
    for (std::size_t j = i + 1; j < root_images.size(); ++j)
      if (root_images[i] == root_images[j])
        throw std::invalid_argument("bruteforce_rooted_count: root images must be distinct");

  const PatternGraph& h = net.graph();
  const std::vector<int> ys = detail::nonroot_order(h, net.root_mask());
  std::vector<VertexWord> image(h.vertex_count(), 0);
  std::vector<bool> is_placed(h.vertex_count(), false);
  for (int i = 0; i < net.root_count(); ++i) {
    image[net.roots()[i]] = root_images[i];
    is_placed[net.roots()[i]] = true;
  }

  std::uint64_t total = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == ys.size()) {
      ++total;
      return;
    }
    const int target = ys[pos];
    g.for_each_vertex([&](VertexWord cand) {
      for (int u = 0; u < h.vertex_count(); ++u) {
        if (!is_placed[u]) continue;
        if (h.has_edge(u, target) && !g.adjacent(image[u], cand)) return;
        if (injective && image[u] == cand) return;
      }
      image[target] = cand;
      is_placed[target] = true;
      self(self, pos + 1);
      is_placed[target] = false;
    });
  };
  rec(rec, 0);
  return BigCount(total);
}

// Exact count of injective adjacency-preserving maps V(F) -> V(G), by
// backtracking with bulk-counted trailing vertices.
inline BigCount bruteforce_monomorphisms(const PatternGraph& f, const DistGraph& g) {
  detail::DenseView view(g);
  return embed::count_monomorphisms(f, view);
}

// -- closed-form quantities --------------------------------------------------------

inline double log_vertex_count(const DistGraph& g) {
  return std::log(double(g.vertex_count()));
}

// M(k, l) = N^k (N1/N)^l, evaluated in log space.
inline double analytic_m(int k, int l, int n) {
  if (k < 1 || l < 0) throw std::invalid_argument("analytic_m: need k >= 1, l >= 0");
  const DistGraph g = build_graph(n);
  const double log_n = std::log(double(g.vertex_count()));
  const double log_n1 = std::log(double(g.regular_degree()));
  return std::exp(k * log_n + l * (log_n1 - log_n));
}

inline Rational analytic_m_exact(int k, int l, int n) {
  if (k < 1 || l < 0) throw std::invalid_argument("analytic_m: need k >= 1, l >= 0");
  const DistGraph g = build_graph(n);
  const BigCount big_n = g.vertex_count();
  const BigCount big_n1 = g.regular_degree();
  return make_rational(bigcount_pow(big_n, unsigned(k)) * bigcount_pow(big_n1, unsigned(l)),
                       bigcount_pow(big_n, unsigned(l)));
}

// p* = N^(-1/rho_max(F)) * sqrt(ln N); the containment threshold.
inline double threshold_p_star(const PatternGraph& f, int n) {
  if (f.edge_count() < 1) throw std::invalid_argument("threshold_p_star: need e(F) >= 1");
  const DistGraph g = build_graph(n);
  const Rational rho = max_density(f);
  const double log_n = std::log(double(g.vertex_count()));
  const double exponent = -to_double(make_rational(denominator(rho), numerator(rho)));
  return std::exp(exponent * log_n) * std::sqrt(log_n);
}

// Poisson-regime probability p = c * N^(-k/l) * N/N1 with k = v(F), l = e(F).
inline double poisson_p(const PatternGraph& f, int n, double c) {
  if (c <= 0) throw std::invalid_argument("poisson_p: c must be positive");
  if (f.edge_count() < 1) throw std::invalid_argument("poisson_p: need e(F) >= 1");
  const DistGraph g = build_graph(n);
  const double log_n = std::log(double(g.vertex_count()));
  const double log_n1 = std::log(double(g.regular_degree()));
  const double k = f.vertex_count(), l = f.edge_count();
  return c * std::exp(-(k / l) * log_n + log_n - log_n1);
}

// Sharp extension threshold: N^k (N1/N)^l p^l / c1 = d ln N solved for p.
inline double ext_sharp_p(const RootedNetwork& net, int n) {
  const DistGraph g = build_graph(n);
  const double log_n = std::log(double(g.vertex_count()));
  const double log_n1 = std::log(double(g.regular_degree()));
  const double c1 = double(root_fixing_automorphism_count(net));
  const double d = net.root_count();
  const double k = net.non_root_count();
  const double l = net.extension_edge_count();
  const double log_pl = std::log(c1 * d * log_n) - k * log_n - l * (log_n1 - log_n);
  return std::exp(log_pl / l);
}

// The theorem hypotheses behind poisson_p / ext_sharp_p; evaluating the
// formulas without them is allowed but flagged.
inline std::vector<std::string> hypothesis_warnings(const PatternGraph& f) {
  std::vector<std::string> w;
  if (!is_strictly_balanced(f))
    w.push_back("pattern is not strictly balanced; Poisson limit hypothesis fails");
  return w;
}

inline std::vector<std::string> hypothesis_warnings(const RootedNetwork& net) {
  std::vector<std::string> w;
  if (!is_nontrivial(net))
    w.push_back("network is not nontrivial; sharp-threshold hypothesis fails");
  if (!is_strictly_balanced_network(net))
    w.push_back("network is not strictly balanced; sharp-threshold hypothesis fails");
  return w;
}

}  // namespace rdg
