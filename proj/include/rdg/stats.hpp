#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace rdg {

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool contains(double v) const { return low <= v && v <= high; }
};

// Wilson score interval at 95% (z = 1.96); well behaved at estimates 0 and 1.
inline Interval wilson_interval(std::uint64_t hits, std::uint64_t trials,
                                double z = 1.959963984540054) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be positive");
  const double n = double(trials);
  const double phat = double(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // the bounds are exactly 0/1 at degenerate estimates; keep them that way
  const double low = hits == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = hits == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

inline double poisson_pmf(std::uint64_t k, double lambda) {
  // stable in log space; lambda = 0 degenerates to a point mass at 0
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  double log_p = -lambda + double(k) * std::log(lambda) - std::lgamma(double(k) + 1.0);
  return std::exp(log_p);
}

// Total variation distance between an empirical pmf and Poisson(lambda) on
// bins {0..max_observed} plus one folded tail bin.
inline double poisson_tv_distance(const std::map<std::uint64_t, std::uint64_t>& counts,
                                  std::uint64_t trials, double lambda) {
  if (trials == 0) throw std::invalid_argument("poisson_tv_distance: trials must be positive");
  std::uint64_t max_observed = 0;
  for (const auto& [k, c] : counts)
    if (c > 0) max_observed = std::max(max_observed, k);
  double sum_abs = 0.0;
  double poisson_mass = 0.0;
  for (std::uint64_t k = 0; k <= max_observed; ++k) {
    const auto it = counts.find(k);
    const double emp = it == counts.end() ? 0.0 : double(it->second) / double(trials);
    const double theo = poisson_pmf(k, lambda);
    poisson_mass += theo;
    sum_abs += std::abs(emp - theo);
  }
  sum_abs += std::max(0.0, 1.0 - poisson_mass);  // tail bin, empirically empty
  return 0.5 * sum_abs;
}

// Nearest-rank quantile of a sorted sample (q in [0,1]).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (q <= 0.0) return sorted.front();
  if (q >= 1.0) return sorted.back();
  const std::size_t rank = std::size_t(std::ceil(q * double(sorted.size())));
  return sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
}

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / double(xs.size());
}

inline double sample_stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / double(xs.size() - 1));
}

}  // namespace rdg
