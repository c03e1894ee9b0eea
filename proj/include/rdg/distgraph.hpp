#pragma once

// The complete distance graph G(n, n/2, n/4): vertices are n-bit words with
// exactly n/2 set bits, edges join words whose AND has popcount n/4.
// Bit i of a word is coordinate i+1 of the 0/1 vector.
//
// The vertex sequence is canonical: increasing numeric word value. It is
// materialized up to n = 24 (C(24,12) ~ 2.7e6 words) and kept implicit via
// combinadic rank/unrank beyond that, so n up to 64 stays constructible.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdg/bigint.hpp"
#include "rdg/rng.hpp"

namespace rdg {

using VertexWord = std::uint64_t;

inline int popcount_word(VertexWord w) { return std::popcount(w); }

struct StirlingEstimates {
  double n_approx;   // sqrt(2/pi) * 2^n / sqrt(n)
  double n1_approx;  // (4/pi)    * 2^n / n
};

inline StirlingEstimates stirling_estimates(int n) {
  if (n <= 0 || n % 4 != 0)
    throw std::invalid_argument("stirling_estimates: n must be a positive multiple of 4");
  constexpr double kPi = 3.14159265358979323846;
  const double pow2n = std::pow(2.0, n);
  return {std::sqrt(2.0 / kPi) * pow2n / std::sqrt(double(n)),
          (4.0 / kPi) * pow2n / double(n)};
}

class DistGraph {
 public:
  static constexpr int kMinN = 4;
  static constexpr int kMaxN = 64;
  static constexpr int kMaxMaterializedN = 24;
  static constexpr int kMaxNeighborCacheN = 16;

  static DistGraph build(int n, bool cache_neighbors = false) {
    if (n % 4 != 0)
      throw std::invalid_argument("build_graph: n must satisfy n = 0 mod 4 (got " +
                                  std::to_string(n) + ")");
    if (n < kMinN || n > kMaxN)
      throw std::invalid_argument("build_graph: n must lie in [4, 64] (got " +
                                  std::to_string(n) + ")");
    DistGraph g;
    g.n_ = n;
    g.half_ = n / 2;
    g.quarter_ = n / 4;
    g.n_vertices_ = binomial_u64(n, g.half_);
    const std::uint64_t c = binomial_u64(g.half_, g.quarter_);
    g.degree_ = c * c;
    if (n <= kMaxMaterializedN) {
      g.table_.reserve(g.n_vertices_);
      for (VertexWord w = g.first_word(); w != 0; w = g.next_word(w)) g.table_.push_back(w);
    }
    if (cache_neighbors && n <= kMaxNeighborCacheN) g.build_neighbor_cache();
    return g;
  }

  int n() const { return n_; }
  int half() const { return half_; }
  int quarter() const { return quarter_; }
  std::uint64_t vertex_count() const { return n_vertices_; }   // N = C(n, n/2)
  std::uint64_t regular_degree() const { return degree_; }     // N1 = C(n/2, n/4)^2
  BigCount edge_count() const { return BigCount(n_vertices_) * degree_ / 2; }

  bool is_vertex(VertexWord w) const {
    return (w >> n_) == 0 && popcount_word(w) == half_;
  }

  bool adjacent(VertexWord u, VertexWord v) const {
    return popcount_word(u & v) == quarter_;
  }

  // -- canonical vertex sequence ------------------------------------------

  VertexWord first_word() const { return (VertexWord(1) << half_) - 1; }

  // Next word with the same popcount (Gosper's hack); 0 when exhausted.
  VertexWord next_word(VertexWord w) const {
    const VertexWord c = w & (0 - w);
    const VertexWord r = w + c;
    VertexWord next = (((r ^ w) >> 2) / c) | r;
    if (n_ == 64) return next > w ? next : 0;  // wrap check without 1<<64
    return next < (VertexWord(1) << n_) ? next : 0;
  }

  template <typename Fn>
  void for_each_vertex(Fn&& fn) const {
    for (VertexWord w = first_word(); w != 0; w = next_word(w)) fn(w);
  }

  // Rank in the canonical order (combinadic of the set-bit positions).
  std::uint64_t index_of(VertexWord w) const {
    std::uint64_t rank = 0;
    int seen = 0;
    VertexWord bits = w;
    while (bits) {
      const int p = std::countr_zero(bits);
      bits &= bits - 1;
      ++seen;
      rank += binomial_u64(p, seen);
    }
    return rank;
  }

  VertexWord vertex_at(std::uint64_t rank) const {
    if (!table_.empty()) return table_[rank];
    VertexWord w = 0;
    for (int j = half_; j >= 1; --j) {
      int p = j - 1;
      while (p + 1 < n_ && binomial_u64(p + 1, j) <= rank) ++p;
      rank -= binomial_u64(p, j);
      w |= VertexWord(1) << p;
    }
    return w;
  }

  bool has_vertex_table() const { return !table_.empty(); }
  const std::vector<VertexWord>& vertex_table() const {
    if (table_.empty())
      throw std::logic_error("vertex table not materialized for n > 24");
    return table_;
  }

  // -- neighbor cache (opt-in, n <= 16) ------------------------------------

  bool has_neighbor_cache() const { return !neighbor_cache_.empty(); }
  const std::vector<std::uint32_t>& cached_neighbors(std::uint32_t index) const {
    return neighbor_cache_[index];
  }

  // -- exact queries --------------------------------------------------------

  // Counted by full enumeration; equals regular_degree() for every vertex.
  std::uint64_t degree(VertexWord v) const {
    std::uint64_t d = 0;
    for_each_vertex([&](VertexWord w) { d += adjacent(v, w) ? 1 : 0; });
    return d;
  }

  // Vertices adjacent to every root. A root is never its own neighbor
  // (its self inner product is n/2), so roots are excluded automatically.
  BigCount common_neighbor_count(const std::vector<VertexWord>& roots) const {
    validate_roots(roots);
    std::uint64_t count = 0;
    for_each_vertex([&](VertexWord w) {
      for (VertexWord r : roots)
        if (!adjacent(r, w)) return;
      ++count;
    });
    return BigCount(count);
  }

  // Searches for three vertices without a common neighbor: mutually adjacent
  // triples first (canonical order), then seeded random triples. `budget`
  // bounds the number of candidate triples examined.
  std::optional<std::array<VertexWord, 3>> find_no_common_neighbor_triple(
      std::uint64_t budget, std::uint64_t seed = 0) const {
    if (budget == 0) return std::nullopt;
    std::uint64_t examined = 0;
    std::optional<std::array<VertexWord, 3>> hit;

    // Phase 1: triangles.
    for (VertexWord u = first_word(); u != 0 && !hit; u = next_word(u)) {
      for (VertexWord v = next_word(u); v != 0 && !hit; v = next_word(v)) {
        if (!adjacent(u, v)) continue;
        for (VertexWord w = next_word(v); w != 0; w = next_word(w)) {
          if (!adjacent(u, w) || !adjacent(v, w)) continue;
          if (common_neighbor_count({u, v, w}) == 0) {
            hit = std::array<VertexWord, 3>{u, v, w};
            break;
          }
          if (++examined >= budget) break;
        }
        if (examined >= budget) break;
      }
      if (examined >= budget) break;
    }
    if (hit || examined >= budget) return hit;

    // Phase 2: random triples.
    CounterRng rng(seed, 0x7319ULL);
    while (examined < budget) {
      const std::uint64_t a = rng.next_below(n_vertices_);
      const std::uint64_t b = rng.next_below(n_vertices_);
      const std::uint64_t c = rng.next_below(n_vertices_);
      if (a == b || a == c || b == c) continue;
      const std::array<VertexWord, 3> t{vertex_at(a), vertex_at(b), vertex_at(c)};
      if (common_neighbor_count({t[0], t[1], t[2]}) == 0) return t;
      ++examined;
    }
    return std::nullopt;
  }

  void validate_roots(const std::vector<VertexWord>& roots) const {
    if (roots.empty()) throw std::invalid_argument("roots must be nonempty");
    for (VertexWord r : roots)
      if (!is_vertex(r))
        throw std::invalid_argument("root is not a vertex of G(n, n/2, n/4)");
  }

 private:
  void build_neighbor_cache() {
    neighbor_cache_.assign(n_vertices_, {});
    for (std::uint32_t i = 0; i < n_vertices_; ++i) {
      const VertexWord u = table_[i];
      for (std::uint32_t j = 0; j < n_vertices_; ++j)
        if (adjacent(u, table_[j])) neighbor_cache_[i].push_back(j);
    }
  }

  int n_ = 0, half_ = 0, quarter_ = 0;
  std::uint64_t n_vertices_ = 0;
  std::uint64_t degree_ = 0;
  std::vector<VertexWord> table_;
  std::vector<std::vector<std::uint32_t>> neighbor_cache_;
};

inline DistGraph build_graph(int n, bool cache_neighbors = false) {
  return DistGraph::build(n, cache_neighbors);
}

// Word <-> coordinate-string helpers ("1100" means x_1=1, x_2=1, x_3=0, x_4=0).
inline VertexWord word_from_coords(const std::string& s) {
  VertexWord w = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      w |= VertexWord(1) << i;
    else if (s[i] != '0')
      throw std::invalid_argument("coordinate string must be over {0,1}");
  }
  return w;
}

inline std::string coords_from_word(VertexWord w, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if ((w >> i) & 1) s[i] = '1';
  return s;
}

}  // namespace rdg
