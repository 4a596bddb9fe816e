#include "weylwalk/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace weylwalk {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t CounterRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  u128 m = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool CounterRng::bernoulli(const Rational& p) {
  if (p.numerator() < 0 || p > Rational(1)) throw std::invalid_argument("probability outside [0, 1]");
  const auto den = static_cast<std::uint64_t>(p.denominator());
  return uniform_below(den) < static_cast<std::uint64_t>(p.numerator());
}

DiscreteSampler::DiscreteSampler(std::span<const Rational> weights) {
  if (weights.empty()) throw std::invalid_argument("sampler needs at least one weight");
  std::int64_t den = 1;
  for (const Rational& w : weights) {
    if (w.numerator() < 0) throw std::invalid_argument("negative weight");
    den = std::lcm(den, w.denominator());
  }
  std::uint64_t total = 0;
  for (const Rational& w : weights) {
    total += static_cast<std::uint64_t>(w.numerator() * (den / w.denominator()));
    cumulative_.push_back(total);
  }
  if (total == 0) throw std::invalid_argument("weights sum to zero");
}

std::size_t DiscreteSampler::operator()(CounterRng& rng) const {
  const std::uint64_t u = rng.uniform_below(cumulative_.back());
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
}

}  // namespace weylwalk
