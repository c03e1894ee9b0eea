#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "rdg/experiments.hpp"
#include "rdg/io.hpp"

using namespace rdg;

TEST_CASE("threshold sweep validates inputs") {
  const PatternGraph k3 = fixture_pattern("k3");
  REQUIRE_THROWS_AS(threshold_sweep(k3, 12, {0.1, 1.0}, 0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(threshold_sweep(k3, 12, {0.1, 1.0}, 10, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(threshold_sweep(k3, 12, {1.0, 0.1}, 100, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(threshold_sweep(k3, 12, {-1.0, 0.1}, 100, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(threshold_sweep(k3, 12, {}, 100, 1), std::invalid_argument);
}

TEST_CASE("threshold sweep rows cover the grid and respect bounds") {
  const PatternGraph k3 = fixture_pattern("k3");
  const std::vector<double> alphas{0.05, 1.0, 1e6};
  const SweepResult r = threshold_sweep(k3, 8, alphas, 60, 9, 2);
  REQUIRE(r.rows.size() == alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    REQUIRE(r.rows[i].alpha == alphas[i]);
    REQUIRE(r.rows[i].hit_count <= r.rows[i].trials);
    REQUIRE(r.rows[i].wilson_low <= r.rows[i].estimate);
    REQUIRE(r.rows[i].estimate <= r.rows[i].wilson_high);
  }
  REQUIRE(r.rows[2].clamped);  // alpha pushed p past 1
  REQUIRE(r.rows[2].p == 1.0);
  REQUIRE(r.rows[2].estimate == 1.0);  // the full graph certainly contains K3
  REQUIRE(r.rows[2].mean_copies.has_value());
  REQUIRE(*r.rows[2].mean_copies == 7560.0);  // 45360 / 6, every trial
  // estimates are monotone across the ends of the grid
  REQUIRE(r.rows[0].estimate <= r.rows[2].estimate);
}

TEST_CASE("small alpha keeps the hit rate near zero (Markov)") {
  const PatternGraph k3 = fixture_pattern("k3");
  const SweepResult r = threshold_sweep(k3, 12, {0.05}, 100, 3, 2);
  // E[X] = copies * p^3 << 0.01 here, so P(X > 0) <= E[X] is tiny
  REQUIRE(r.rows[0].estimate <= 0.05);
}

TEST_CASE("Wilson intervals track the exact K2 containment probability") {
  const PatternGraph k2 = fixture_pattern("k2");
  const std::vector<double> alphas{0.2, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1e4, 1e8};
  const SweepResult r = threshold_sweep(k2, 8, alphas, 200, 12, 2);
  int contained = 0;
  for (const SweepRow& row : r.rows) {
    const double exact = 1.0 - std::pow(1.0 - row.p, 1260.0);
    if (row.wilson_low <= exact && exact <= row.wilson_high) ++contained;
  }
  REQUIRE(contained >= int(std::ceil(0.9 * double(r.rows.size()))));
}

TEST_CASE("lln check: deterministic at p=1, tight for K2 at p=1/2") {
  const PatternGraph k2 = fixture_pattern("k2");
  const LlnResult sure = lln_check(k2, 8, 1.0, 5, 1);
  REQUIRE(sure.deviations.front() == 0.0);
  REQUIRE(sure.deviations.back() == 0.0);

  const LlnResult r = lln_check(k2, 12, 0.5, 300, 8, 2);
  REQUIRE_THAT(r.expected_copies, Catch::Matchers::WithinRel(92400.0, 1e-9));
  REQUIRE(r.quantile(0.5) <= 0.01);  // binomial concentration

  REQUIRE_THROWS_AS(lln_check(k2, 8, 0.0, 10, 1), std::invalid_argument);
}

TEST_CASE("lln check: K3 relative deviations at moderate p") {
  // exact-variance oracle: triangles sharing one edge are the only
  // dependent pairs; Var = M(p^3 - p^6) + 2 * E * C(cn,2) * (p^5 - p^6)
  const double p = 0.05, m = 10102400.0, edges = 184800.0, cn = 164.0;
  const double var = m * (std::pow(p, 3) - std::pow(p, 6)) +
                     2.0 * edges * (cn * (cn - 1) / 2.0) * (std::pow(p, 5) - std::pow(p, 6));
  const double rel_sd = std::sqrt(var) / (m * std::pow(p, 3));
  REQUIRE(2.0 * rel_sd < 0.2);  // the asserted quantile bound is comfortably feasible

  const LlnResult r = lln_check(fixture_pattern("k3"), 12, p, 300, 21, 2);
  REQUIRE(r.quantile(0.95) < 0.2);
}

TEST_CASE("poisson experiment at n=12") {
  const PatternGraph k3 = fixture_pattern("k3");
  REQUIRE_THROWS_AS(poisson_experiment(k3, 12, 1.0, 500, 1), std::invalid_argument);

  const PoissonResult r = poisson_experiment(k3, 12, 1.0, 1000, 5, 2);
  REQUIRE(r.warnings.empty());
  REQUIRE_THAT(r.lambda_theory, Catch::Matchers::WithinRel(1.0 / 6.0, 1e-12));
  REQUIRE_THAT(r.p, Catch::Matchers::WithinRel(1.0 / 400.0, 1e-12));
  const double lambda_expected = 10102400.0 * std::pow(1.0 / 400.0, 3);
  REQUIRE_THAT(r.lambda_exact, Catch::Matchers::WithinRel(lambda_expected, 1e-9));
  // exact-mean identity within Monte Carlo error
  REQUIRE(std::abs(r.empirical_mean - r.lambda_exact) <=
          4.0 * std::sqrt(r.lambda_exact / double(r.trials)));
  REQUIRE(r.tv_distance >= 0.0);
  REQUIRE(r.tv_distance <= 0.2);
  std::uint64_t mass = 0;
  for (const auto& [k, c] : r.pmf_counts) mass += c;
  REQUIRE(mass == r.trials);
}

TEST_CASE("poisson experiment warns off-hypothesis") {
  const PatternGraph pendant(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const PoissonResult r = poisson_experiment(pendant, 8, 1.0, 1000, 5, 2);
  REQUIRE_FALSE(r.warnings.empty());
}

TEST_CASE("ext sweep separates the two sides of the threshold") {
  const RootedNetwork re = fixture_network("root-edge");
  const SweepResult r =
      ext_sweep(re, 8, {0.2, 5.0}, 80, RootFilter{}, ExtMode::Exhaustive(), 11, 2);
  REQUIRE(r.rows.size() == 2);
  REQUIRE(r.rows[0].estimate <= r.rows[1].estimate);
  REQUIRE_FALSE(r.rows[0].mean_copies.has_value());
  // a clamped row: multiplier pushing p over 1
  const SweepResult c =
      ext_sweep(re, 8, {100.0}, 5, RootFilter{}, ExtMode::Exhaustive(), 11, 2);
  REQUIRE(c.rows[0].clamped);
  REQUIRE(c.rows[0].estimate == 1.0);
}

TEST_CASE("ext sweep budget and sampled-mode validation") {
  const RootedNetwork cherry = fixture_network("cherry");
  REQUIRE_THROWS_AS(ext_sweep(cherry, 16, {1.0}, 5, RootFilter{}, ExtMode::Exhaustive(), 1),
                    BudgetExceeded);
  REQUIRE_THROWS_AS(ext_sweep(cherry, 12, {1.0}, 5, RootFilter{}, ExtMode::Sampled(0), 1),
                    std::invalid_argument);
  // sampled mode runs within budgeted sizes
  const SweepResult r =
      ext_sweep(cherry, 12, {4.0}, 10, RootFilter{}, ExtMode::Sampled(30), 13, 2);
  REQUIRE(r.rows[0].hit_count <= 10);
}

TEST_CASE("uniformity: root-edge has a single x-vector and zero spread") {
  const auto rows = uniformity_check(fixture_network("root-edge"), {8, 12, 16},
                                     RootFilter{}, 50, 1);
  for (const UniformityRow& row : rows) {
    REQUIRE(row.distinct_x == 1);
    REQUIRE(row.spread == 0.0);
    REQUIRE(row.min_count == row.max_count);
  }
}

TEST_CASE("uniformity: cherry spread shrinks from n=8 to n=20") {
  const auto rows =
      uniformity_check(fixture_network("cherry"), {8, 20}, RootFilter{}, 200, 1);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].min_count <= rows[0].max_count);
  REQUIRE(rows[1].spread < rows[0].spread);
}

TEST_CASE("uniformity: cherry counts near M(1,2) at n=16") {
  // the x = 0 count divided by M(1, 2) sits in [0.8, 1.2]
  const BigCount at_zero = blockprofile_rooted_count(
      fixture_network("cherry"), partition_vector_from_x(16, {0, 0, 0, 0}), 16);
  const double ref = analytic_m(1, 2, 16);
  const double ratio = at_zero.convert_to<double>() / ref;
  REQUIRE(ratio > 0.8);
  REQUIRE(ratio < 1.2);
}

TEST_CASE("convergence report: K2 is exact, K3 approaches 1") {
  const auto k2_rows = convergence_report(fixture_pattern("k2"), {8, 12, 16, 20});
  for (const ConvergenceRow& row : k2_rows)
    REQUIRE(row.ratio_exact == make_rational(1, 1));  // M(2,1) = N*N1 exactly

  const auto k3_rows = convergence_report(fixture_pattern("k3"), {8, 24});
  REQUIRE(k3_rows[0].monomorphisms == 45360);
  REQUIRE(k3_rows[0].ratio_exact == make_rational(45360, 46656));
  const Rational dev8 = abs(k3_rows[0].ratio_exact - 1);
  const Rational dev24 = abs(k3_rows[1].ratio_exact - 1);
  REQUIRE(dev24 < dev8);
}

TEST_CASE("experiments are deterministic across thread counts") {
  const PatternGraph k3 = fixture_pattern("k3");
  const SweepResult a = threshold_sweep(k3, 12, {0.5, 2.0}, 60, 77, 1);
  const SweepResult b = threshold_sweep(k3, 12, {0.5, 2.0}, 60, 77, 2);
  std::ostringstream ca, cb;
  write_csv(ca, a);
  write_csv(cb, b);
  REQUIRE(ca.str() == cb.str());

  const auto ua = uniformity_check(fixture_network("cherry"), {8, 12}, RootFilter{}, 60, 3, 1);
  const auto ub = uniformity_check(fixture_network("cherry"), {8, 12}, RootFilter{}, 60, 3, 2);
  std::ostringstream ja, jb;
  write_json_document(ja, "uniformity", Json{{"samples", 60}}, 3, rows_json(ua));
  write_json_document(jb, "uniformity", Json{{"samples", 60}}, 3, rows_json(ub));
  REQUIRE(ja.str() == jb.str());
}

TEST_CASE("csv headers are stable") {
  const PatternGraph k2 = fixture_pattern("k2");
  const SweepResult r = threshold_sweep(k2, 8, {1.0}, 50, 1, 1);
  std::ostringstream out;
  write_csv(out, r);
  REQUIRE_THAT(out.str(), Catch::Matchers::StartsWith(
                              "n,alpha,p,clamped,trials,hit_count,estimate,"
                              "wilson_low,wilson_high,mean_copies\n"));
}
