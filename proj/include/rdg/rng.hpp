#pragma once

// Counter-based splittable generator.
//
// Reproducibility contract:
//   * a stream is identified by (master_seed, stream_id); the key is
//     key = mix(mix(master_seed) ^ mix(stream_id ^ GOLDEN)),
//   * draw i of a stream is mix(key + (i+1)*GOLDEN)  (the splitmix64
//     sequence, addressable by counter),
//   * Monte Carlo trial t always uses stream_id = t; substreams inside a
//     trial use child(salt).
// Outputs are therefore identical across platforms and worker counts.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace rdg {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace detail

class CounterRng {
 public:
  CounterRng() : CounterRng(0, 0) {}
  CounterRng(std::uint64_t master_seed, std::uint64_t stream_id)
      : key_(detail::mix64(detail::mix64(master_seed) ^
                           detail::mix64(stream_id ^ detail::kGolden))) {}

  // Derived stream with an independent counter. Deterministic in (this key, salt).
  CounterRng child(std::uint64_t salt) const {
    CounterRng r;
    r.key_ = detail::mix64(key_ ^ detail::mix64(salt + detail::kGolden));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() {
    ++counter_;
    return detail::mix64(key_ + counter_ * detail::kGolden);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_unit_open() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % bound;
    }
  }

  // Exact Binomial(trials, p) by geometric gap sampling over the underlying
  // Bernoulli process; expected cost O(trials * min(p, 1-p)).
  std::uint64_t binomial(std::uint64_t trials, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial: p outside [0,1]");
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    if (p > 0.5) return trials - binomial(trials, 1.0 - p);
    const double log_q = std::log1p(-p);
    std::uint64_t count = 0;
    double pos = 0.0;  // index of the next candidate trial
    for (;;) {
      const double gap = std::floor(std::log(next_unit_open()) / log_q);
      pos += gap + 1.0;
      if (pos > static_cast<double>(trials)) break;
      ++count;
    }
    return count;
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Stream key recorded for trial t of an experiment with the given master seed.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  return detail::mix64(detail::mix64(master_seed) ^
                       detail::mix64(trial_index ^ detail::kGolden));
}

}  // namespace rdg
