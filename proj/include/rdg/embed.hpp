#pragma once

// Generic backtracking over injective, edge-preserving placements of a small
// pattern into an index-addressed graph view. A view provides:
//   uint32_t vertex_count() const
//   const std::vector<uint32_t>& neighbors(uint32_t v) const   (sorted)
//   bool adjacent(uint32_t a, uint32_t b) const
//
// Up to two pairwise-nonadjacent pattern vertices are kept as a "tail" and
// counted in bulk from candidate-set sizes instead of being enumerated, which
// keeps counts like paths/cycles on 4 vertices tractable on the full graph.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <vector>

#include "rdg/bigint.hpp"
#include "rdg/patterns.hpp"

namespace rdg {
namespace embed {

struct Plan {
  std::vector<int> prefix;
  std::vector<int> tail;  // 0..2 vertices, pairwise nonadjacent in the pattern
};

namespace detail {

inline std::vector<int> greedy_prefix(const PatternGraph& f, std::uint16_t excluded,
                                      int* free_vertices) {
  const int v = f.vertex_count();
  std::vector<int> order;
  std::uint16_t placed = 0;
  *free_vertices = 0;
  for (;;) {
    int best = -1, best_links = -1;
    for (int u = 0; u < v; ++u) {
      if (((excluded | placed) >> u) & 1) continue;
      const int links = std::popcount(std::uint16_t(f.row(u) & placed));
      if (links > best_links) {
        best_links = links;
        best = u;
      }
    }
    if (best < 0) break;
    if (best_links == 0 && !order.empty()) ++(*free_vertices);
    order.push_back(best);
    placed |= std::uint16_t(1) << best;
  }
  return order;
}

}  // namespace detail

// Choose the tail that minimizes the enumeration cost. Every prefix vertex
// multiplies the node count by roughly the degree (or the vertex count when
// it has no placed neighbor), so prefix size dominates; unconstrained
// placements and unconstrained tail vertices break ties.
inline Plan make_plan(const PatternGraph& f) {
  const int v = f.vertex_count();
  Plan best;
  int best_score = INT_MAX;
  auto consider = [&](std::vector<int> tail) {
    std::uint16_t excluded = 0;
    for (int t : tail) excluded |= std::uint16_t(1) << t;
    int free_vertices = 0;
    std::vector<int> prefix = detail::greedy_prefix(f, excluded, &free_vertices);
    int unconstrained_tail = 0;
    for (int t : tail)
      if ((f.row(t) & std::uint16_t(~excluded)) == 0) ++unconstrained_tail;
    const int score = 100 * int(prefix.size()) + 10 * free_vertices + unconstrained_tail;
    if (score < best_score) {
      best_score = score;
      best = Plan{std::move(prefix), std::move(tail)};
    }
  };
  consider({});
  for (int a = 0; a < v; ++a) consider({a});
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      if (!f.has_edge(a, b)) consider({a, b});
  return best;
}

namespace detail {

// Intersection of neighbor lists of the target's placed neighbors, excluding
// every placed image (injectivity). Fills `out` (kept sorted since the anchor
// list is sorted); caller handles the unconstrained target case.
template <class View>
void candidate_set(const PatternGraph& f, const View& g,
                   const std::vector<int>& placed_vertices,
                   const std::vector<std::uint32_t>& image_of, int target,
                   std::vector<std::uint32_t>& out) {
  out.clear();
  int anchor = -1;
  std::size_t anchor_size = SIZE_MAX;
  for (int u : placed_vertices) {
    if (!f.has_edge(u, target)) continue;
    const auto& nb = g.neighbors(image_of[u]);
    if (nb.size() < anchor_size) {
      anchor_size = nb.size();
      anchor = u;
    }
  }
  if (anchor < 0) return;
  for (std::uint32_t cand : g.neighbors(image_of[anchor])) {
    bool ok = true;
    for (int u : placed_vertices) {
      if (image_of[u] == cand) {
        ok = false;
        break;
      }
      if (u != anchor && f.has_edge(u, target) && !g.adjacent(image_of[u], cand)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(cand);
  }
}

inline std::uint64_t sorted_intersection_size(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
  std::uint64_t c = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++c;
      ++ia;
      ++ib;
    }
  }
  return c;
}

template <class View>
bool has_placed_neighbor(const PatternGraph& f, const std::vector<int>& placed, int target) {
  for (int u : placed)
    if (f.has_edge(u, target)) return true;
  return false;
}

template <class View>
struct CountState {
  const PatternGraph& f;
  const View& g;
  const Plan& plan;
  std::vector<int> placed;
  std::vector<std::uint32_t> image_of;
  unsigned __int128 total = 0;
  // scratch buffers, one per recursion level plus two for the tail
  std::vector<std::vector<std::uint32_t>> scratch;

  void count_tail() {
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t remaining = n - placed.size();
    if (plan.tail.empty()) {
      total += 1;
      return;
    }
    auto& sa = scratch[plan.prefix.size()];
    auto& sb = scratch[plan.prefix.size() + 1];
    if (plan.tail.size() == 1) {
      const int a = plan.tail[0];
      if (!has_placed_neighbor<View>(f, placed, a)) {
        total += remaining;
        return;
      }
      candidate_set(f, g, placed, image_of, a, sa);
      total += sa.size();
      return;
    }
    const int a = plan.tail[0];
    const int b = plan.tail[1];
    const bool ca = has_placed_neighbor<View>(f, placed, a);
    const bool cb = has_placed_neighbor<View>(f, placed, b);
    if (!ca && !cb) {
      total += static_cast<unsigned __int128>(remaining) * (remaining - 1);
      return;
    }
    if (ca && cb) {
      candidate_set(f, g, placed, image_of, a, sa);
      candidate_set(f, g, placed, image_of, b, sb);
      total += static_cast<unsigned __int128>(sa.size()) * sb.size() -
               sorted_intersection_size(sa, sb);
      return;
    }
    candidate_set(f, g, placed, image_of, ca ? a : b, sa);
    // the unconstrained one ranges over everything unused; overlap = |sa|
    total += static_cast<unsigned __int128>(sa.size()) * remaining - sa.size();
  }

  void dfs(std::size_t pos) {
    if (pos == plan.prefix.size()) {
      count_tail();
      return;
    }
    const int target = plan.prefix[pos];
    if (!has_placed_neighbor<View>(f, placed, target)) {
      const std::uint32_t n = g.vertex_count();
      for (std::uint32_t cand = 0; cand < n; ++cand) {
        if (!try_place(target, cand)) continue;
        dfs(pos + 1);
        placed.pop_back();
      }
      return;
    }
    auto& cands = scratch[pos];
    candidate_set(f, g, placed, image_of, target, cands);
    for (std::uint32_t cand : cands) {
      placed.push_back(target);
      image_of[target] = cand;
      dfs(pos + 1);
      placed.pop_back();
    }
  }

  bool try_place(int target, std::uint32_t cand) {
    for (int u : placed) {
      if (image_of[u] == cand) return false;
      if (f.has_edge(u, target) && !g.adjacent(image_of[u], cand)) return false;
    }
    placed.push_back(target);
    image_of[target] = cand;
    return true;
  }
};

template <class View>
bool exists_dfs(const PatternGraph& f, const View& g, const std::vector<int>& order,
                std::vector<int>& placed, std::vector<std::uint32_t>& image_of,
                std::size_t pos) {
  if (pos == order.size()) return true;
  const int target = order[pos];
  auto attempt = [&](std::uint32_t cand) {
    for (int u : placed) {
      if (image_of[u] == cand) return false;
      if (f.has_edge(u, target) && !g.adjacent(image_of[u], cand)) return false;
    }
    placed.push_back(target);
    image_of[target] = cand;
    if (exists_dfs(f, g, order, placed, image_of, pos + 1)) return true;
    placed.pop_back();
    return false;
  };
  if (has_placed_neighbor<View>(f, placed, target)) {
    std::vector<std::uint32_t> cands;
    candidate_set(f, g, placed, image_of, target, cands);
    for (std::uint32_t cand : cands)
      if (attempt(cand)) return true;
  } else {
    const std::uint32_t n = g.vertex_count();
    for (std::uint32_t cand = 0; cand < n; ++cand)
      if (attempt(cand)) return true;
  }
  return false;
}

}  // namespace detail

// Number of injective edge-preserving maps V(F) -> V(view).
template <class View>
BigCount count_monomorphisms(const PatternGraph& f, const View& g) {
  if (std::uint64_t(f.vertex_count()) > g.vertex_count()) return 0;
  const Plan plan = make_plan(f);
  detail::CountState<View> st{f, g, plan, {},
                              std::vector<std::uint32_t>(f.vertex_count(), 0), 0,
                              std::vector<std::vector<std::uint32_t>>(plan.prefix.size() + 2)};
  st.dfs(0);
  return bigcount_from_u128(st.total);
}

template <class View>
bool has_monomorphism(const PatternGraph& f, const View& g) {
  if (std::uint64_t(f.vertex_count()) > g.vertex_count()) return false;
  int free_vertices = 0;
  const std::vector<int> order = detail::greedy_prefix(f, 0, &free_vertices);
  std::vector<int> placed;
  std::vector<std::uint32_t> image_of(f.vertex_count(), 0);
  return detail::exists_dfs(f, g, order, placed, image_of, 0);
}

}  // namespace embed
}  // namespace rdg
