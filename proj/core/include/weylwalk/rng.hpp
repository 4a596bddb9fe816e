#pragma once

// Counter-based random streams. Draw k of stream (seed, index) is a SplitMix64
// finalizer applied to a key derived from both and the counter, so streams
// need no shared state and any trajectory can be regenerated on its own.
// The integer and real samplers are defined here rather than taken from
// <random> because standard distributions are not bit-reproducible across
// library implementations.

#include "weylwalk/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace weylwalk {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of trajectory `index` under `base_seed`.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(splitmix64(base_seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(splitmix64(seed)) {}

  std::uint64_t next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }
  std::uint64_t counter() const { return counter_; }

  // Uniform on [0, bound), bound >= 1; Lemire's multiply-and-reject.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Exact Bernoulli(p) for rational p in [0, 1].
  bool bernoulli(const Rational& p);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Exact sampling from rational weights: the weights are scaled to integers
// once and an index is drawn by a single bounded uniform.
class DiscreteSampler {
 public:
  DiscreteSampler() = default;
  explicit DiscreteSampler(std::span<const Rational> weights);

  std::size_t size() const { return cumulative_.size(); }
  std::size_t operator()(CounterRng& rng) const;

 private:
  std::vector<std::uint64_t> cumulative_;
};

}  // namespace weylwalk
