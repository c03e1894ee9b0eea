#pragma once

// Seeded experiment drivers. Every driver is a pure function of its config:
// trial t always consumes the stream derived from (master_seed, t), results
// land in per-trial slots and are reduced in index order, so re-runs agree
// byte for byte at any worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdg/bigint.hpp"
#include "rdg/distgraph.hpp"
#include "rdg/errors.hpp"
#include "rdg/exactcount.hpp"
#include "rdg/parallel.hpp"
#include "rdg/patterns.hpp"
#include "rdg/rng.hpp"
#include "rdg/sampler.hpp"
#include "rdg/stats.hpp"

namespace rdg {

// -- sweeps (containment threshold / extension threshold) ---------------------

struct SweepRow {
  int n = 0;
  double alpha = 0.0;  // grid multiplier
  double p = 0.0;
  bool clamped = false;
  std::uint64_t trials = 0;
  std::uint64_t hit_count = 0;
  double estimate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  std::optional<double> mean_copies;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

inline void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep: grid must be nonempty");
  double prev = 0.0;
  for (double a : grid) {
    if (a <= 0.0) throw std::invalid_argument("sweep: grid values must be positive");
    if (a <= prev) throw std::invalid_argument("sweep: grid values must be ascending");
    prev = a;
  }
}

// Default grid: 9 points log-spaced over [0.1, 10].
inline std::vector<double> default_sweep_grid() {
  std::vector<double> g;
  for (int i = 0; i < 9; ++i) g.push_back(std::pow(10.0, -1.0 + i * 0.25));
  return g;
}

// Estimates P(X_F > 0) at p = alpha * p*(F, n) per grid point.
inline SweepResult threshold_sweep(const PatternGraph& f, int n,
                                   const std::vector<double>& alphas,
                                   std::uint64_t trials, std::uint64_t seed,
                                   int threads = 0) {
  validate_grid(alphas);
  if (trials < 50) throw std::invalid_argument("threshold_sweep: trials must be >= 50");
  const DistGraph g = build_graph(n);
  const double p_star = threshold_p_star(f, n);

  SweepResult result;
  for (std::size_t row_i = 0; row_i < alphas.size(); ++row_i) {
    const double raw_p = alphas[row_i] * p_star;
    SweepRow row;
    row.n = n;
    row.alpha = alphas[row_i];
    row.clamped = raw_p > 1.0;
    row.p = row.clamped ? 1.0 : raw_p;
    row.trials = trials;

    std::vector<BigCount> counts(trials);
    parallel_for_index(trials, threads, [&](std::uint64_t t) {
      const std::uint64_t stream = row_i * trials + t;
      const SampledGraph s = sample_gp(g, row.p, trial_seed(seed, stream));
      counts[t] = count_copies(f, s);
    });
    BigCount total = 0;
    for (const BigCount& c : counts) {
      if (c > 0) ++row.hit_count;
      total += c;
    }
    row.estimate = double(row.hit_count) / double(trials);
    const Interval ci = wilson_interval(row.hit_count, trials);
    row.wilson_low = ci.low;
    row.wilson_high = ci.high;
    row.mean_copies = total.convert_to<double>() / double(trials);
    result.rows.push_back(row);
  }
  return result;
}

// -- law of large numbers ------------------------------------------------------

struct LlnResult {
  int n = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  double expected_copies = 0.0;  // exact copy count * p^e(F)
  std::vector<double> deviations;  // |X/EX - 1|, sorted ascending

  double quantile(double q) const { return quantile_sorted(deviations, q); }
};

inline LlnResult lln_check(const PatternGraph& f, int n, double p, std::uint64_t trials,
                           std::uint64_t seed, int threads = 0) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("lln_check: p must lie in [0,1]");
  if (trials < 1) throw std::invalid_argument("lln_check: trials must be positive");
  const DistGraph g = build_graph(n);
  const BigCount copies =
      blockprofile_unrooted_count(f, n, true) / automorphism_count(f);
  const double expected = copies.convert_to<double>() * std::pow(p, f.edge_count());
  if (expected == 0.0)
    throw std::invalid_argument("lln_check: E[X_F] is zero for this configuration");

  LlnResult result;
  result.n = n;
  result.p = p;
  result.trials = trials;
  result.expected_copies = expected;
  result.deviations.resize(trials);
  parallel_for_index(trials, threads, [&](std::uint64_t t) {
    const SampledGraph s = sample_gp(g, p, trial_seed(seed, t));
    const double x = count_copies(f, s).convert_to<double>();
    result.deviations[t] = std::abs(x / expected - 1.0);
  });
  std::sort(result.deviations.begin(), result.deviations.end());
  return result;
}

// -- Poisson limit ---------------------------------------------------------------

struct PoissonResult {
  int n = 0;
  double c = 0.0;
  double p = 0.0;
  std::uint64_t trials = 0;
  double lambda_theory = 0.0;  // c^l / a
  double lambda_exact = 0.0;   // exact copy count * p^l
  double empirical_mean = 0.0;
  double tv_distance = 0.0;
  std::map<std::uint64_t, std::uint64_t> pmf_counts;
  std::vector<std::string> warnings;
};

inline PoissonResult poisson_experiment(const PatternGraph& f, int n, double c,
                                        std::uint64_t trials, std::uint64_t seed,
                                        int threads = 0) {
  if (trials < 1000)
    throw std::invalid_argument("poisson_experiment: trials must be >= 1000");
  PoissonResult result;
  result.warnings = hypothesis_warnings(f);
  result.n = n;
  result.c = c;
  result.trials = trials;
  result.p = poisson_p(f, n, c);

  const DistGraph g = build_graph(n);
  const long long a = automorphism_count(f);
  const int l = f.edge_count();
  result.lambda_theory = std::pow(c, l) / double(a);
  const BigCount copies = blockprofile_unrooted_count(f, n, true) / a;
  result.lambda_exact = copies.convert_to<double>() * std::pow(result.p, l);

  std::vector<std::uint64_t> counts(trials);
  parallel_for_index(trials, threads, [&](std::uint64_t t) {
    const SampledGraph s = sample_gp(g, result.p, trial_seed(seed, t));
    counts[t] = count_copies(f, s).convert_to<std::uint64_t>();
  });
  unsigned __int128 total = 0;
  for (std::uint64_t x : counts) {
    ++result.pmf_counts[x];
    total += x;
  }
  result.empirical_mean =
      bigcount_from_u128(total).convert_to<double>() / double(trials);
  result.tv_distance = poisson_tv_distance(result.pmf_counts, trials, result.lambda_exact);
  return result;
}

// -- sharp extension threshold ----------------------------------------------------

inline SweepResult ext_sweep(const RootedNetwork& net, int n,
                             const std::vector<double>& multipliers,
                             std::uint64_t trials, const RootFilter& filter,
                             ExtMode mode, std::uint64_t seed, int threads = 0) {
  validate_grid(multipliers);
  if (trials < 1) throw std::invalid_argument("ext_sweep: trials must be positive");
  const DistGraph g = build_graph(n);
  if (mode.exhaustive) {
    double total = 1.0;
    for (int i = 0; i < net.root_count(); ++i) total *= double(g.vertex_count());
    if (total > double(kExtExhaustiveBudget))
      throw BudgetExceeded("ext_sweep: N^d exceeds the exhaustive budget of 1e7 tuples");
  } else if (mode.sample_count == 0) {
    throw std::invalid_argument("ext_sweep: sampled mode needs a positive tuple count");
  }

  SweepResult result;
  result.warnings = hypothesis_warnings(net);
  if (!filter.growth_hypothesis_ok(n))
    result.warnings.push_back("root filter f(n) is not << n^(2/3)");
  const double p_sharp = ext_sharp_p(net, n);

  for (std::size_t row_i = 0; row_i < multipliers.size(); ++row_i) {
    const double raw_p = multipliers[row_i] * p_sharp;
    SweepRow row;
    row.n = n;
    row.alpha = multipliers[row_i];
    row.clamped = raw_p > 1.0;
    row.p = row.clamped ? 1.0 : raw_p;
    row.trials = trials;

    std::vector<char> holds(trials, 0);
    parallel_for_index(trials, threads, [&](std::uint64_t t) {
      const std::uint64_t stream = row_i * trials + t;
      const std::uint64_t tseed = trial_seed(seed, stream);
      const SampledGraph s = sample_gp(g, row.p, tseed);
      CounterRng tuple_rng = CounterRng(tseed, 0).child(1);
      holds[t] = check_ext(s, net, filter, mode, tuple_rng).holds ? 1 : 0;
    });
    for (char h : holds) row.hit_count += h;
    row.estimate = double(row.hit_count) / double(trials);
    const Interval ci = wilson_interval(row.hit_count, trials);
    row.wilson_low = ci.low;
    row.wilson_high = ci.high;
    result.rows.push_back(row);
  }
  return result;
}

// -- block-profile uniformity -------------------------------------------------------

struct UniformityRow {
  int n = 0;
  int f = 0;
  std::uint64_t samples = 0;
  std::uint64_t distinct_x = 0;
  BigCount min_count;
  BigCount max_count;
  double spread = 0.0;       // max/min - 1 over the sampled x-vectors
  double reference_m = 0.0;  // M(k, l)
  double min_over_ref = 0.0;
  double max_over_ref = 0.0;
  // distinct x-vectors seen, with sample multiplicity and exact count
  struct XSample {
    std::vector<int> x;
    std::uint64_t multiplicity = 0;
    BigCount count;
  };
  std::vector<XSample> x_samples;
};

// Samples admissible root tuples, evaluates the exact block-profile count at
// every distinct x-vector seen, and reports the spread, per n.
inline std::vector<UniformityRow> uniformity_check(const RootedNetwork& net,
                                                   const std::vector<int>& n_list,
                                                   const RootFilter& filter,
                                                   std::uint64_t samples_per_n,
                                                   std::uint64_t seed, int threads = 0) {
  if (net.root_count() > 2 || net.non_root_count() > 2)
    throw std::invalid_argument("uniformity_check: supported for d <= 2, k <= 2");
  if (samples_per_n < 1)
    throw std::invalid_argument("uniformity_check: samples_per_n must be positive");
  if (n_list.empty()) throw std::invalid_argument("uniformity_check: empty n list");

  std::vector<UniformityRow> rows(n_list.size());
  parallel_for_index(n_list.size(), threads, [&](std::uint64_t i) {
    const int n = n_list[i];
    const DistGraph g = build_graph(n);
    const int d = net.root_count();
    CounterRng rng(seed, std::uint64_t(n));

    std::map<std::vector<int>, std::uint64_t> seen_x;
    std::uint64_t accepted = 0;
    const std::uint64_t max_attempts = samples_per_n * 1000 + 1000;
    std::uint64_t attempts = 0;
    std::vector<VertexWord> words(d);
    while (accepted < samples_per_n && attempts < max_attempts) {
      ++attempts;
      for (int r = 0; r < d; ++r) words[r] = g.vertex_at(rng.next_below(g.vertex_count()));
      const PartitionVector pv = partition_vector(n, words);
      const int fv = filter.f_value(n);
      bool ok = true;
      for (int xj : pv.x)
        if (xj > fv || xj < -fv) ok = false;
      if (!ok) continue;
      ++accepted;
      ++seen_x[pv.x];
    }
    if (accepted == 0)
      throw std::invalid_argument("uniformity_check: root filter accepted no tuples");

    UniformityRow row;
    row.n = n;
    row.f = filter.f_value(n);
    row.samples = accepted;
    row.distinct_x = seen_x.size();
    bool first = true;
    for (const auto& [x, freq] : seen_x) {
      const BigCount count =
          blockprofile_rooted_count(net, partition_vector_from_x(n, x), n);
      row.x_samples.push_back({x, freq, count});
      if (first || count < row.min_count) row.min_count = count;
      if (first || count > row.max_count) row.max_count = count;
      first = false;
    }
    if (row.min_count > 0)
      row.spread = to_double(make_rational(row.max_count, row.min_count)) - 1.0;
    else
      row.spread = std::numeric_limits<double>::infinity();
    row.reference_m = analytic_m(net.non_root_count(), net.extension_edge_count(), n);
    row.min_over_ref = row.min_count.convert_to<double>() / row.reference_m;
    row.max_over_ref = row.max_count.convert_to<double>() / row.reference_m;
    rows[i] = row;
  });
  return rows;
}

// -- monomorphism-count convergence ---------------------------------------------------

struct ConvergenceRow {
  int n = 0;
  BigCount monomorphisms;
  double analytic = 0.0;  // M(k, l) with k = v(F), l = e(F)
  Rational ratio_exact;   // monomorphisms / M(k, l)
  double ratio = 0.0;
};

inline std::vector<ConvergenceRow> convergence_report(const PatternGraph& f,
                                                      const std::vector<int>& n_list) {
  if (f.vertex_count() > 5)
    throw std::invalid_argument("convergence_report: pattern capped at 5 vertices");
  if (n_list.empty()) throw std::invalid_argument("convergence_report: empty n list");
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    ConvergenceRow row;
    row.n = n;
    row.monomorphisms = blockprofile_unrooted_count(f, n, true);
    const Rational m = analytic_m_exact(f.vertex_count(), f.edge_count(), n);
    row.analytic = to_double(m);
    row.ratio_exact = make_rational(row.monomorphisms, 1) / m;
    row.ratio = to_double(row.ratio_exact);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rdg
