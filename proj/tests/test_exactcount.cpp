#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "rdg/exactcount.hpp"
#include "rdg/rng.hpp"

using namespace rdg;

namespace {

long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

VertexWord adjacent_partner(const DistGraph& g, VertexWord u) {
  VertexWord found = 0;
  g.for_each_vertex([&](VertexWord w) {
    if (found == 0 && g.adjacent(u, w)) found = w;
  });
  return found;
}

}  // namespace

TEST_CASE("partition vectors") {
  // d=1: popcount n/2 forces equal blocks, x = 0
  const DistGraph g8 = build_graph(8);
  const auto pv1 = partition_vector(8, {g8.vertex_at(17)});
  REQUIRE(pv1.block_sizes == std::vector<int>{4, 4});
  REQUIRE(pv1.x == std::vector<int>{0, 0});

  // d=2, adjacent pair: intersection n/4 forces equal blocks
  const VertexWord u = g8.vertex_at(0);
  const VertexWord v = adjacent_partner(g8, u);
  const auto pv2 = partition_vector(8, {u, v});
  REQUIRE(pv2.block_sizes == std::vector<int>{2, 2, 2, 2});
  REQUIRE(pv2.x == std::vector<int>{0, 0, 0, 0});

  // d=2, support intersection 3
  const auto pv3 = partition_vector(
      8, {word_from_coords("11110000"), word_from_coords("11101000")});
  REQUIRE(pv3.x == std::vector<int>{1, -1, -1, 1});

  // x sums to zero and blocks sum to n, over random tuples
  CounterRng rng(23, 0);
  for (int i = 0; i < 100; ++i) {
    std::vector<VertexWord> roots;
    for (int d = 0; d < 3; ++d) roots.push_back(g8.vertex_at(rng.next_below(70)));
    const auto pv = partition_vector(8, roots);
    int xs = 0, bs = 0;
    for (int x : pv.x) xs += x;
    for (int b : pv.block_sizes) bs += b;
    REQUIRE(xs == 0);
    REQUIRE(bs == 8);
    // x-addressed reconstruction gives the same blocks
    REQUIRE(partition_vector_from_x(8, pv.x).block_sizes == pv.block_sizes);
  }

  // every pair has an x-vector of the shape (x, -x, -x, x)
  const DistGraph g12 = build_graph(12);
  for (int i = 0; i < 100; ++i) {
    const VertexWord a = g12.vertex_at(rng.next_below(g12.vertex_count()));
    const VertexWord b = g12.vertex_at(rng.next_below(g12.vertex_count()));
    const auto pv = partition_vector(12, {a, b});
    REQUIRE(pv.x[1] == -pv.x[0]);
    REQUIRE(pv.x[2] == -pv.x[0]);
    REQUIRE(pv.x[3] == pv.x[0]);
  }
}

TEST_CASE("rooted block-profile counts against closed forms") {
  // root-edge at x=0: the single system u1+u2=n/2, u1=n/4 gives C(n/2,n/4)^2
  const auto re = fixture_network("root-edge");
  REQUIRE(blockprofile_rooted_count(re, partition_vector_from_x(8, {0, 0}), 8) == 36);

  // cherry at x=0: sum over u of [C(n/4+?,..)] — Vandermonde-style oracle
  const auto cherry = fixture_network("cherry");
  auto cherry_oracle = [&](int n, int m) {  // m = support intersection of the roots
    BigCount total = 0;
    for (int u = 0; u <= m; ++u) {
      const BigCount term = binomial(m, u) * binomial(n / 2 - m, n / 4 - u);
      total += term * term;
    }
    return total;
  };
  REQUIRE(blockprofile_rooted_count(cherry, partition_vector_from_x(8, {0, 0, 0, 0}), 8) ==
          18);
  REQUIRE(cherry_oracle(8, 2) == 18);
  REQUIRE(blockprofile_rooted_count(cherry, partition_vector_from_x(12, {0, 0, 0, 0}), 12) ==
          164);
  REQUIRE(cherry_oracle(12, 3) == 164);
  // every admissible x at n=12 matches the oracle
  for (int m = 0; m <= 6; ++m) {
    const int x = m - 3;
    REQUIRE(blockprofile_rooted_count(cherry,
                                      partition_vector_from_x(12, {x, -x, -x, x}), 12) ==
            cherry_oracle(12, m));
  }
}

TEST_CASE("rooted block-profile equals brute force on root tuples") {
  const DistGraph g = build_graph(8);
  CounterRng rng(31, 0);
  for (const char* name : {"root-edge", "cherry", "two-children", "path-ext"}) {
    const RootedNetwork net = fixture_network(name);
    const int d = net.root_count();
    for (int i = 0; i < 25; ++i) {
      std::vector<VertexWord> roots;
      while (int(roots.size()) < d) {
        const VertexWord w = g.vertex_at(rng.next_below(g.vertex_count()));
        bool dup = false;
        for (VertexWord r : roots) dup |= (r == w);
        if (!dup) roots.push_back(w);
      }
      const BigCount bp = blockprofile_rooted_count(net, partition_vector(8, roots), 8);
      const BigCount bf = bruteforce_rooted_count(net, roots, g, false);
      REQUIRE(bp == bf);
    }
  }
}

TEST_CASE("rooted counts depend on roots only through the x-vector") {
  const DistGraph g = build_graph(8);
  const RootedNetwork cherry = fixture_network("cherry");
  std::map<std::vector<int>, BigCount> by_x;
  CounterRng rng(37, 0);
  for (int i = 0; i < 60; ++i) {
    const VertexWord a = g.vertex_at(rng.next_below(70));
    const VertexWord b = g.vertex_at(rng.next_below(70));
    if (a == b) continue;
    const auto pv = partition_vector(8, {a, b});
    const BigCount bf = bruteforce_rooted_count(cherry, {a, b}, g, false);
    auto [it, inserted] = by_x.emplace(pv.x, bf);
    if (!inserted) REQUIRE(it->second == bf);
  }
  REQUIRE(by_x.size() >= 2);
}

TEST_CASE("two-children separates the injectivity semantics") {
  const DistGraph g = build_graph(8);
  const RootedNetwork tc = fixture_network("two-children");
  const VertexWord z = g.vertex_at(0);
  REQUIRE(bruteforce_rooted_count(tc, {z}, g, false) == 36 * 36);
  REQUIRE(bruteforce_rooted_count(tc, {z}, g, true) == 36 * 36 - 36);
  REQUIRE(blockprofile_rooted_count(tc, partition_vector(8, {z}), 8) == 36 * 36);

  // for root-edge the two modes coincide: the root is excluded by adjacency
  const RootedNetwork re = fixture_network("root-edge");
  REQUIRE(bruteforce_rooted_count(re, {z}, g, false) ==
          bruteforce_rooted_count(re, {z}, g, true));
}

TEST_CASE("rooted block-profile validates its inputs") {
  const auto cherry = fixture_network("cherry");
  REQUIRE_THROWS_AS(blockprofile_rooted_count(cherry, partition_vector_from_x(8, {0, 0}), 8),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(partition_vector_from_x(8, {1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("unrooted block-profile counts") {
  // K1: one block, one solution
  REQUIRE(blockprofile_unrooted_count(PatternGraph(1, {}), 8, false) == 70);
  REQUIRE(blockprofile_unrooted_count(PatternGraph(1, {}), 8, true) == 70);

  // K2 at n=4: N*N1 in both modes
  for (bool inj : {false, true})
    REQUIRE(blockprofile_unrooted_count(fixture_pattern("k2"), 4, inj) == 24);

  // K3 at n=4: all pattern pairs adjacent, injectivity automatic
  for (bool inj : {false, true})
    REQUIRE(blockprofile_unrooted_count(fixture_pattern("k3"), 4, inj) == 48);
}

TEST_CASE("unrooted injective counts equal the backtracking oracle") {
  const DistGraph g = build_graph(8);
  for (const char* name : {"k2", "p3", "k3", "p4", "c4"}) {
    const PatternGraph f = fixture_pattern(name);
    const BigCount blocked = blockprofile_unrooted_count(f, 8, true);
    const BigCount oracle = bruteforce_monomorphisms(f, g);
    REQUIRE(blocked == oracle);
    // monomorphism counts are divisible by the automorphism count
    REQUIRE(blocked % automorphism_count(f) == 0);
    // injective never exceeds the chain count
    REQUIRE(blocked <= blockprofile_unrooted_count(f, 8, false));
  }
  // complete patterns: equality of the two semantics
  for (const char* name : {"k2", "k3", "k4"}) {
    const PatternGraph f = fixture_pattern(name);
    REQUIRE(blockprofile_unrooted_count(f, 8, true) ==
            blockprofile_unrooted_count(f, 8, false));
  }
}

TEST_CASE("backtracking oracle golden values") {
  REQUIRE(bruteforce_monomorphisms(fixture_pattern("k2"), build_graph(4)) == 24);
  const DistGraph g8 = build_graph(8);
  REQUIRE(bruteforce_monomorphisms(fixture_pattern("k3"), g8) == 45360);
  REQUIRE(BigCount(70) * 36 * 18 == 45360);  // N * N1 * (common neighbors of an edge)
  // P3 at n=4: sum over centers of deg*(deg-1)
  const DistGraph g4 = build_graph(4);
  std::uint64_t p3 = 0;
  g4.for_each_vertex([&](VertexWord c) {
    const std::uint64_t deg = g4.degree(c);
    p3 += deg * (deg - 1);
  });
  REQUIRE(p3 == 72);
  REQUIRE(bruteforce_monomorphisms(fixture_pattern("p3"), g4) == 72);
}

TEST_CASE("analytic M(k, l)") {
  REQUIRE_THAT(analytic_m(2, 1, 4), Catch::Matchers::WithinRel(24.0, 1e-12));
  REQUIRE(analytic_m_exact(2, 1, 4) == make_rational(24, 1));
  REQUIRE_THAT(analytic_m(3, 3, 8), Catch::Matchers::WithinRel(46656.0, 1e-12));
  REQUIRE(analytic_m_exact(3, 3, 8) == make_rational(46656, 1));
  REQUIRE(analytic_m_exact(1, 0, 8) == make_rational(70, 1));
  REQUIRE_THROWS_AS(analytic_m(0, 1, 8), std::invalid_argument);
}

TEST_CASE("threshold p*") {
  // K3 at n=16: sqrt(ln N)/N with N = 12870
  const double expected = std::sqrt(std::log(12870.0)) / 12870.0;
  REQUIRE_THAT(threshold_p_star(fixture_pattern("k3"), 16),
               Catch::Matchers::WithinRel(expected, 1e-12));
  REQUIRE_THAT(threshold_p_star(fixture_pattern("k3"), 16),
               Catch::Matchers::WithinRel(2.39e-4, 2e-3));
  // K2 at n=8: rho_max = 1/2
  const double expected_k2 = std::pow(70.0, -2.0) * std::sqrt(std::log(70.0));
  REQUIRE_THAT(threshold_p_star(fixture_pattern("k2"), 8),
               Catch::Matchers::WithinRel(expected_k2, 1e-12));

  // alternative form N^(-1/rho) * N/N1 agrees up to a bounded factor
  for (int n : {8, 12, 16, 20, 24}) {
    const DistGraph g = build_graph(n);
    const double alt = std::pow(double(g.vertex_count()), -1.0) *
                       double(g.vertex_count()) / double(g.regular_degree());
    const double ratio = threshold_p_star(fixture_pattern("k3"), n) / alt;
    REQUIRE(ratio > 0.2);
    REQUIRE(ratio < 5.0);
  }
}

TEST_CASE("poisson regime probability") {
  REQUIRE_THAT(poisson_p(fixture_pattern("k3"), 16, 1.0),
               Catch::Matchers::WithinRel(1.0 / 4900.0, 1e-12));
  REQUIRE_THAT(poisson_p(fixture_pattern("k3"), 12, 2.0),
               Catch::Matchers::WithinRel(0.005, 1e-12));
  REQUIRE_THROWS_AS(poisson_p(fixture_pattern("k3"), 12, 0.0), std::invalid_argument);
}

TEST_CASE("sharp extension threshold probability") {
  REQUIRE_THAT(ext_sharp_p(fixture_network("root-edge"), 12),
               Catch::Matchers::WithinRel(std::log(924.0) / 400.0, 1e-12));
  REQUIRE_THAT(ext_sharp_p(fixture_network("root-edge"), 8),
               Catch::Matchers::WithinRel(std::log(70.0) / 36.0, 1e-12));
  // cherry: k=1, l=2, d=2, c1=1; p = sqrt(2 ln N * (N/N1)^2 / N)
  const double n_count = double(binom_ll(12, 6));
  const double n1 = double(binom_ll(6, 3) * binom_ll(6, 3));
  const double expected =
      std::sqrt(2.0 * std::log(n_count) * (n_count / n1) * (n_count / n1) / n_count);
  REQUIRE_THAT(ext_sharp_p(fixture_network("cherry"), 12),
               Catch::Matchers::WithinRel(expected, 1e-12));
}

TEST_CASE("hypothesis warnings") {
  REQUIRE(hypothesis_warnings(fixture_pattern("k3")).empty());
  const PatternGraph pendant(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  REQUIRE_FALSE(hypothesis_warnings(pendant).empty());
  const RootedNetwork path(PatternGraph(3, {{0, 1}, {1, 2}}), {0});
  REQUIRE_FALSE(hypothesis_warnings(path).empty());
  REQUIRE(hypothesis_warnings(fixture_network("cherry")).empty());
}
