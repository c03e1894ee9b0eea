#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <vector>

#include "rdg/distgraph.hpp"
#include "rdg/rng.hpp"

using namespace rdg;

namespace {

// Independent oracle: every n-bit word with popcount n/2, ascending.
std::vector<VertexWord> enumerate_vertices(int n) {
  std::vector<VertexWord> out;
  for (VertexWord w = 0; w < (VertexWord(1) << n); ++w)
    if (std::popcount(w) == n / 2) out.push_back(w);
  return out;
}

long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("build_graph matches the enumeration oracle") {
  for (int n : {4, 8, 12}) {
    const DistGraph g = build_graph(n);
    const auto oracle = enumerate_vertices(n);
    REQUIRE(g.vertex_count() == oracle.size());
    REQUIRE(g.vertex_count() == std::uint64_t(binom_ll(n, n / 2)));
    const long long c = binom_ll(n / 2, n / 4);
    REQUIRE(g.regular_degree() == std::uint64_t(c * c));

    // canonical order is ascending numeric value and rank/unrank agree
    std::size_t i = 0;
    g.for_each_vertex([&](VertexWord w) {
      REQUIRE(w == oracle[i]);
      REQUIRE(g.vertex_at(i) == w);
      REQUIRE(g.index_of(w) == i);
      ++i;
    });
    REQUIRE(i == oracle.size());
  }
  REQUIRE(build_graph(4).vertex_count() == 6);
  REQUIRE(build_graph(4).regular_degree() == 4);
  REQUIRE(build_graph(8).vertex_count() == 70);
  REQUIRE(build_graph(8).regular_degree() == 36);
}

TEST_CASE("build_graph rejects bad n with the constraint named") {
  REQUIRE_THROWS_WITH(build_graph(6), Catch::Matchers::ContainsSubstring("mod 4"));
  REQUIRE_THROWS_WITH(build_graph(0), Catch::Matchers::ContainsSubstring("mod 4") ||
                                          Catch::Matchers::ContainsSubstring("[4, 64]"));
  REQUIRE_THROWS_WITH(build_graph(68), Catch::Matchers::ContainsSubstring("[4, 64]"));
  REQUIRE_NOTHROW(build_graph(64));  // no materialized table, still constructible
  REQUIRE(build_graph(64).vertex_count() == 1832624140942590534ULL);
}

TEST_CASE("adjacency is the n/4 inner product") {
  const DistGraph g = build_graph(4);
  const VertexWord u = word_from_coords("1100");
  REQUIRE(g.adjacent(u, word_from_coords("1010")));
  REQUIRE_FALSE(g.adjacent(u, word_from_coords("0011")));  // inner product 0
  REQUIRE_FALSE(g.adjacent(u, u));                          // no loops
}

TEST_CASE("adjacency is symmetric and irreflexive") {
  const DistGraph g = build_graph(8);
  CounterRng rng(11, 0);
  for (int i = 0; i < 200; ++i) {
    const VertexWord a = g.vertex_at(rng.next_below(g.vertex_count()));
    const VertexWord b = g.vertex_at(rng.next_below(g.vertex_count()));
    REQUIRE(g.adjacent(a, b) == g.adjacent(b, a));
    REQUIRE_FALSE(g.adjacent(a, a));
  }
}

TEST_CASE("degree equals N1 everywhere") {
  REQUIRE(build_graph(4).degree(word_from_coords("1100")) == 4);
  const DistGraph g8 = build_graph(8);
  g8.for_each_vertex([&](VertexWord v) { REQUIRE(g8.degree(v) == 36); });
  const DistGraph g12 = build_graph(12);
  REQUIRE(g12.regular_degree() == 400);  // C(6,3)^2
  CounterRng rng(3, 0);
  for (int i = 0; i < 20; ++i)
    REQUIRE(g12.degree(g12.vertex_at(rng.next_below(g12.vertex_count()))) == 400);
}

TEST_CASE("total edge count is N*N1/2") {
  const DistGraph g = build_graph(8);
  std::uint64_t edges = 0;
  g.for_each_vertex([&](VertexWord u) {
    g.for_each_vertex([&](VertexWord v) {
      if (u < v && g.adjacent(u, v)) ++edges;
    });
  });
  REQUIRE(edges == 1260);
  REQUIRE(g.edge_count() == 1260);
}

TEST_CASE("common neighbors, small cases by brute force") {
  const DistGraph g4 = build_graph(4);
  const std::vector<VertexWord> roots{word_from_coords("1100"), word_from_coords("1010")};
  REQUIRE(g4.common_neighbor_count(roots) == 2);
  std::set<VertexWord> witnesses;
  g4.for_each_vertex([&](VertexWord w) {
    if (g4.adjacent(w, roots[0]) && g4.adjacent(w, roots[1])) witnesses.insert(w);
  });
  REQUIRE(witnesses ==
          std::set<VertexWord>{word_from_coords("1001"), word_from_coords("0110")});

  const DistGraph g8 = build_graph(8);
  const VertexWord u8 = g8.vertex_at(0);
  VertexWord v8 = 0;
  g8.for_each_vertex([&](VertexWord w) {
    if (v8 == 0 && g8.adjacent(u8, w)) v8 = w;
  });
  REQUIRE(g8.common_neighbor_count({u8, v8}) == 18);
}

TEST_CASE("common neighbor count of adjacent pairs is edge-transitive") {
  const DistGraph g = build_graph(12);
  CounterRng rng(5, 0);
  int sampled = 0;
  while (sampled < 50) {
    const VertexWord u = g.vertex_at(rng.next_below(g.vertex_count()));
    const VertexWord v = g.vertex_at(rng.next_below(g.vertex_count()));
    if (!g.adjacent(u, v)) continue;
    ++sampled;
    REQUIRE(g.common_neighbor_count({u, v}) == 164);
  }
}

TEST_CASE("no-common-neighbor triples: n=8 has none (exhaustive oracle)") {
  const DistGraph g = build_graph(8);
  std::vector<VertexWord> verts;
  g.for_each_vertex([&](VertexWord w) { verts.push_back(w); });
  bool any = false;
  for (std::size_t i = 0; i < verts.size() && !any; ++i)
    for (std::size_t j = i + 1; j < verts.size() && !any; ++j)
      for (std::size_t k = j + 1; k < verts.size() && !any; ++k)
        if (g.common_neighbor_count({verts[i], verts[j], verts[k]}) == 0) any = true;
  REQUIRE_FALSE(any);
  // the finder agrees: budget exhausted without a witness
  REQUIRE_FALSE(g.find_no_common_neighbor_triple(60000, 1).has_value());
}

TEST_CASE("no-common-neighbor triple exists at n=12 and verifies to zero") {
  const DistGraph g = build_graph(12);
  const auto witness = g.find_no_common_neighbor_triple(20000, 1);
  REQUIRE(witness.has_value());
  REQUIRE(g.common_neighbor_count({(*witness)[0], (*witness)[1], (*witness)[2]}) == 0);
  // empty search
  REQUIRE_FALSE(g.find_no_common_neighbor_triple(0, 1).has_value());
}

TEST_CASE("Stirling estimates") {
  const auto s8 = stirling_estimates(8);
  REQUIRE_THAT(s8.n_approx, Catch::Matchers::WithinRel(72.2163, 1e-4));
  const auto s4 = stirling_estimates(4);
  REQUIRE_THAT(s4.n_approx, Catch::Matchers::WithinRel(6.38308, 1e-4));
  // relative error shrinks with n
  const double err8 = std::abs(70.0 / s8.n_approx - 1.0);
  const auto s16 = stirling_estimates(16);
  const double err16 = std::abs(12870.0 / s16.n_approx - 1.0);
  REQUIRE(err16 < err8);
}

TEST_CASE("opt-in neighbor cache agrees with on-demand adjacency") {
  const DistGraph g = build_graph(8, /*cache_neighbors=*/true);
  REQUIRE(g.has_neighbor_cache());
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    const auto& nbrs = g.cached_neighbors(i);
    REQUIRE(nbrs.size() == g.regular_degree());
    for (std::uint32_t j : nbrs)
      REQUIRE(g.adjacent(g.vertex_table()[i], g.vertex_table()[j]));
  }
  // the flag is ignored past the cache range
  REQUIRE_FALSE(build_graph(20, true).has_neighbor_cache());
}

TEST_CASE("vertex rank/unrank roundtrip without the table") {
  const DistGraph g = build_graph(28);  // beyond the materialized range
  REQUIRE_FALSE(g.has_vertex_table());
  CounterRng rng(17, 0);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t r = rng.next_below(g.vertex_count());
    const VertexWord w = g.vertex_at(r);
    REQUIRE(std::popcount(w) == 14);
    REQUIRE(g.index_of(w) == r);
  }
}
