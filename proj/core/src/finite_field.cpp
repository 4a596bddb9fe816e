#include "weylwalk/finite_field.hpp"

#include <stdexcept>

namespace weylwalk {

bool is_supported_modulus(int q) {
  return q == 2 || q == 3 || q == 5 || q == 7 || q == 11 || q == 13;
}

void require_supported_modulus(int q) {
  if (!is_supported_modulus(q))
    throw std::invalid_argument("q must be a prime between 2 and 13, got " + std::to_string(q));
}

namespace fq {

std::uint8_t inv(std::uint8_t a, int q) {
  if (a == 0) throw std::domain_error("division by zero in F_q");
  for (int b = 1; b < q; ++b)
    if ((a * b) % q == 1) return static_cast<std::uint8_t>(b);
  throw std::logic_error("modulus is not prime");
}

std::uint8_t reduce(std::int64_t x, int q) {
  const std::int64_t r = x % q;
  return static_cast<std::uint8_t>(r < 0 ? r + q : r);
}

}  // namespace fq
}  // namespace weylwalk
