#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace pairest {

/// Seeded random stream. The engine and its seeding are fully specified by
/// the standard, and all derived draws are implemented here rather than via
/// the implementation-defined <random> distributions, so a (seed, stream)
/// pair yields the same sequence on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Stream id for the k-th use of a seed, packing up to three small indices.
constexpr std::uint64_t stream_id(std::uint64_t purpose, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t rep) {
  return (purpose << 56) ^ (a << 48) ^ (b << 40) ^ rep;
}

/// Draws from a fixed discrete distribution by inverse CDF.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights);
  std::size_t operator()(Rng& rng) const;
  std::size_t size() const noexcept { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

/// Zipf weights 1/k^s for ranks k = 1..n.
std::vector<double> zipf_weights(std::size_t n, double exponent);

/// m distinct values from [0, n), in draw order.
std::vector<std::uint32_t> draw_without_replacement(std::uint32_t n, std::uint32_t m, Rng& rng);

template <typename T>
void shuffle(std::vector<T>& xs, Rng& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) {
    std::swap(xs[i - 1], xs[rng.below(i)]);
  }
}

}  // namespace pairest
