#pragma once

// The random spanning subgraph G_p: every edge of the complete distance graph
// retained independently with probability p.
//
// Sampling strategy (deterministic in (n, p, seed)):
//   * sparse (p <= 0.05 and n > 8): draw the retained count from
//     Binomial(N*N1/2, p), then draw that many distinct edges by rejection —
//     uniform ordered vertex-index pair, accept when adjacent and unseen;
//   * dense (p > 0.05 or n <= 8): walk ordered index pairs (i < j) and flip
//     one Bernoulli coin per base edge encountered.
// The dense path is monotone-coupled across p at a fixed seed (the coin
// sequence is shared), which the monotonicity tests rely on.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rdg/bigint.hpp"
#include "rdg/distgraph.hpp"
#include "rdg/embed.hpp"
#include "rdg/errors.hpp"
#include "rdg/exactcount.hpp"
#include "rdg/patterns.hpp"
#include "rdg/rng.hpp"
#include "rdg/stats.hpp"

namespace rdg {

// Root-tuple admissibility filter: |x_j| <= f(n) with f(n) = [n^exponent]
// unless an explicit value is pinned. The sharp-threshold theorem wants
// f << n^(2/3); exponents at or above 2/3 still evaluate but are flagged.
struct RootFilter {
  double f_exponent = 0.6;
  std::optional<int> explicit_f;

  int f_value(int n) const {
    if (explicit_f) return *explicit_f;
    return int(std::floor(std::pow(double(n), f_exponent)));
  }
  bool growth_hypothesis_ok(int n) const {
    return double(f_value(n)) < std::pow(double(n), 2.0 / 3.0);
  }
};

inline bool in_tilde_v(const RootFilter& filter, int n,
                       const std::vector<VertexWord>& roots) {
  const PartitionVector pv = partition_vector(n, roots);
  const int f = filter.f_value(n);
  for (int xj : pv.x)
    if (xj > f || xj < -f) return false;
  return true;
}

class SampledGraph {
 public:
  static constexpr double kDenseThreshold = 0.05;

  static SampledGraph sample(const DistGraph& g, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("sample_gp: p must lie in [0, 1]");
    if (!g.has_vertex_table())
      throw std::invalid_argument("sample_gp: sampling supported for n <= 24");
    SampledGraph s;
    s.base_ = &g;
    s.p_ = p;
    s.seed_ = seed;
    CounterRng rng(seed, 0);
    const auto& table = g.vertex_table();
    const std::uint32_t n_vertices = std::uint32_t(table.size());
    if (p > kDenseThreshold || g.n() <= 8) {
      for (std::uint32_t i = 0; i < n_vertices; ++i)
        for (std::uint32_t j = i + 1; j < n_vertices; ++j) {
          if (!g.adjacent(table[i], table[j])) continue;
          if (rng.next_unit() < p) s.edges_.emplace_back(i, j);
        }
    } else {
      const std::uint64_t base_edges = (BigCount(g.vertex_count()) * g.regular_degree() / 2)
                                           .convert_to<std::uint64_t>();
      const std::uint64_t want = rng.binomial(base_edges, p);
      if (want > (std::uint64_t(1) << 31))
        throw std::invalid_argument(
            "sample_gp: expected retained edge count exceeds 2^31; "
            "this (n, p) regime is out of reach");
      std::unordered_set<std::uint64_t> seen;
      seen.reserve(want * 2);
      while (s.edges_.size() < want) {
        std::uint32_t i = std::uint32_t(rng.next_below(n_vertices));
        std::uint32_t j = std::uint32_t(rng.next_below(n_vertices));
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        if (!g.adjacent(table[i], table[j])) continue;
        const std::uint64_t key = std::uint64_t(i) * n_vertices + j;
        if (!seen.insert(key).second) continue;
        s.edges_.emplace_back(i, j);
      }
      std::sort(s.edges_.begin(), s.edges_.end());
    }
    s.build_csr();
    return s;
  }

  // Synthetic sample from an explicit retained-edge list (tests, fixtures).
  static SampledGraph from_edges(const DistGraph& g,
                                 std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                                 double p = 0.0, std::uint64_t seed = 0) {
    if (!g.has_vertex_table())
      throw std::invalid_argument("from_edges: needs a materialized vertex table");
    SampledGraph s;
    s.base_ = &g;
    s.p_ = p;
    s.seed_ = seed;
    const auto& table = g.vertex_table();
    for (auto& [i, j] : edges) {
      if (i > j) std::swap(i, j);
      if (i == j || j >= table.size() || !g.adjacent(table[i], table[j]))
        throw std::invalid_argument("from_edges: pair is not a base edge");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    s.edges_ = std::move(edges);
    s.build_csr();
    return s;
  }

  const DistGraph& base() const { return *base_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t retained_edge_count() const { return edges_.size(); }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }

  std::uint32_t vertex_count() const { return std::uint32_t(offsets_.size() - 1); }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  std::uint64_t retained_degree(std::uint32_t v) const {
    return offsets_[v + 1] - offsets_[v];
  }
  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    auto na = neighbors(a);
    auto nb = neighbors(b);
    const auto& shorter = na.size() <= nb.size() ? na : nb;
    const std::uint32_t target = na.size() <= nb.size() ? b : a;
    return std::binary_search(shorter.begin(), shorter.end(), target);
  }

 private:
  void build_csr() {
    const std::uint32_t n_vertices = std::uint32_t(base_->vertex_table().size());
    offsets_.assign(n_vertices + 1, 0);
    for (auto [i, j] : edges_) {
      ++offsets_[i + 1];
      ++offsets_[j + 1];
    }
    for (std::uint32_t v = 0; v < n_vertices; ++v) offsets_[v + 1] += offsets_[v];
    nbrs_.resize(edges_.size() * 2);
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [i, j] : edges_) {
      nbrs_[cursor[i]++] = j;
      nbrs_[cursor[j]++] = i;
    }
    for (std::uint32_t v = 0; v < n_vertices; ++v)
      std::sort(nbrs_.begin() + offsets_[v], nbrs_.begin() + offsets_[v + 1]);
  }

  const DistGraph* base_ = nullptr;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> nbrs_;
};

inline SampledGraph sample_gp(const DistGraph& g, double p, std::uint64_t seed) {
  return SampledGraph::sample(g, p, seed);
}

// Unordered copies of F in the sample: monomorphisms / automorphisms.
inline BigCount count_copies(const PatternGraph& f, const SampledGraph& s) {
  if (f.vertex_count() > 6)
    throw std::invalid_argument("count_copies: pattern capped at 6 vertices");
  const BigCount monos = embed::count_monomorphisms(f, s);
  const long long a = automorphism_count(f);
  return monos / a;
}

inline bool contains_copy(const PatternGraph& f, const SampledGraph& s) {
  if (f.vertex_count() > 6)
    throw std::invalid_argument("contains_copy: pattern capped at 6 vertices");
  return embed::has_monomorphism(f, s);
}

// -- extension property -------------------------------------------------------

struct ExtMode {
  bool exhaustive = true;
  std::uint64_t sample_count = 0;  // tuples drawn in sampled mode

  static ExtMode Exhaustive() { return {true, 0}; }
  static ExtMode Sampled(std::uint64_t count) { return {false, count}; }
};

struct ExtReport {
  bool holds = true;
  std::uint64_t tuples_checked = 0;
  std::optional<std::vector<VertexWord>> first_failure;
};

namespace detail {

// Witness search: images of the non-roots realizing every required adjacency
// inside the sample. Edges between roots are not required by the property.
inline bool ext_witness_exists(const SampledGraph& s, const RootedNetwork& net,
                               const std::vector<int>& ys,
                               const std::vector<std::uint32_t>& root_idx) {
  const PatternGraph& h = net.graph();
  std::vector<std::uint32_t> image(h.vertex_count(), 0);
  std::vector<bool> is_placed(h.vertex_count(), false);
  for (int i = 0; i < net.root_count(); ++i) {
    image[net.roots()[i]] = root_idx[i];
    is_placed[net.roots()[i]] = true;
  }
  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == ys.size()) return true;
    const int target = ys[pos];
    // anchor on the placed required neighbor with the fewest retained edges
    int anchor = -1;
    std::size_t anchor_deg = SIZE_MAX;
    for (int u = 0; u < h.vertex_count(); ++u) {
      if (!is_placed[u] || !h.has_edge(u, target)) continue;
      const std::size_t deg = s.retained_degree(image[u]);
      if (deg < anchor_deg) {
        anchor_deg = deg;
        anchor = u;
      }
    }
    auto attempt = [&](std::uint32_t cand) -> bool {
      for (int u = 0; u < h.vertex_count(); ++u) {
        if (!is_placed[u] || !h.has_edge(u, target)) continue;
        if (u != anchor && !s.adjacent(image[u], cand)) return false;
      }
      image[target] = cand;
      is_placed[target] = true;
      if (self(self, pos + 1)) return true;
      is_placed[target] = false;
      return false;
    };
    if (anchor >= 0) {
      for (std::uint32_t cand : s.neighbors(image[anchor]))
        if (attempt(cand)) return true;
    } else {
      for (std::uint32_t cand = 0; cand < s.vertex_count(); ++cand)
        if (attempt(cand)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

inline std::vector<VertexWord> tuple_words(const DistGraph& g,
                                           const std::vector<std::uint32_t>& idx) {
  std::vector<VertexWord> words(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) words[i] = g.vertex_table()[idx[i]];
  return words;
}

}  // namespace detail

inline constexpr std::uint64_t kExtExhaustiveBudget = 10'000'000;

// Decide Ext over the admissible root tuples of the sample. Exhaustive mode
// walks all of V^d in canonical order (so a reported failure is the minimal
// one); sampled mode draws tuples uniformly and gives a one-sided verdict.
inline ExtReport check_ext(const SampledGraph& s, const RootedNetwork& net,
                           const RootFilter& filter, ExtMode mode,
                           CounterRng rng = CounterRng(0, 0)) {
  const DistGraph& g = s.base();
  const int d = net.root_count();
  const std::vector<int> ys = detail::nonroot_order(net.graph(), net.root_mask());
  const std::uint64_t n_vertices = g.vertex_count();

  ExtReport report;
  auto check_tuple = [&](const std::vector<std::uint32_t>& idx) -> bool {
    const std::vector<VertexWord> words = detail::tuple_words(g, idx);
    if (!in_tilde_v(filter, g.n(), words)) return true;  // outside the filter
    ++report.tuples_checked;
    if (detail::ext_witness_exists(s, net, ys, idx)) return true;
    report.holds = false;
    report.first_failure = words;
    return false;
  };

  if (mode.exhaustive) {
    double total = 1.0;
    for (int i = 0; i < d; ++i) total *= double(n_vertices);
    if (total > double(kExtExhaustiveBudget))
      throw BudgetExceeded("check_ext: N^d exceeds the exhaustive budget of 1e7 tuples");
    std::vector<std::uint32_t> idx(d, 0);
    for (;;) {
      if (!check_tuple(idx)) return report;
      int pos = d - 1;
      while (pos >= 0 && idx[pos] + 1 == n_vertices) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
    return report;
  }

  std::uint64_t accepted = 0;
  const std::uint64_t max_attempts = mode.sample_count * 1000 + 1000;
  std::uint64_t attempts = 0;
  while (accepted < mode.sample_count && attempts < max_attempts) {
    ++attempts;
    std::vector<std::uint32_t> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = std::uint32_t(rng.next_below(n_vertices));
    const std::vector<VertexWord> words = detail::tuple_words(g, idx);
    if (!in_tilde_v(filter, g.n(), words)) continue;
    ++accepted;
    ++report.tuples_checked;
    if (!detail::ext_witness_exists(s, net, ys, idx)) {
      report.holds = false;
      report.first_failure = words;
      return report;
    }
  }
  if (accepted == 0)
    throw std::invalid_argument("check_ext: root filter accepted no tuples");
  return report;
}

// -- admissible-tuple fraction -------------------------------------------------

struct FractionEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool exact = false;
  std::uint64_t samples = 0;
};

inline constexpr std::uint64_t kTildeExactBudget = 1'000'000;

// |V~_f^d| / N^d: exact enumeration when N^d is small, otherwise Monte Carlo
// over uniform tuples with a Wilson interval.
inline FractionEstimate tilde_fraction(const DistGraph& g, int d, const RootFilter& filter,
                                       std::uint64_t samples, std::uint64_t seed) {
  if (d < 1 || d > 3) throw std::invalid_argument("tilde_fraction: d must be 1..3");
  if (!g.has_vertex_table())
    throw std::invalid_argument("tilde_fraction: supported for n <= 24");
  const std::uint64_t n_vertices = g.vertex_count();
  double total = 1.0;
  for (int i = 0; i < d; ++i) total *= double(n_vertices);

  if (total <= double(kTildeExactBudget)) {
    std::uint64_t in_count = 0, all_count = 0;
    std::vector<std::uint32_t> idx(d, 0);
    for (;;) {
      ++all_count;
      if (in_tilde_v(filter, g.n(), detail::tuple_words(g, idx))) ++in_count;
      int pos = d - 1;
      while (pos >= 0 && idx[pos] + 1 == n_vertices) idx[pos--] = 0;
      if (pos < 0) break;
      ++idx[pos];
    }
    const double est = double(in_count) / double(all_count);
    return {est, est, est, true, all_count};
  }

  if (samples == 0) throw std::invalid_argument("tilde_fraction: samples must be positive");
  CounterRng rng(seed, 0x71DEULL);
  std::uint64_t hits = 0;
  std::vector<std::uint32_t> idx(d);
  for (std::uint64_t t = 0; t < samples; ++t) {
    for (int i = 0; i < d; ++i) idx[i] = std::uint32_t(rng.next_below(n_vertices));
    if (in_tilde_v(filter, g.n(), detail::tuple_words(g, idx))) ++hits;
  }
  const Interval ci = wilson_interval(hits, samples);
  return {double(hits) / double(samples), ci.low, ci.high, false, samples};
}

}  // namespace rdg
