#pragma once

// Prime fields F_q for the small primes q <= 13. Elements are stored as
// bytes in [0, q); the raw helpers below are what the polynomial kernels use.

#include <cstdint>
#include <string>

namespace weylwalk {

bool is_supported_modulus(int q);
// Throws std::invalid_argument unless q is a prime in [2, 13].
void require_supported_modulus(int q);

namespace fq {

inline std::uint8_t add(std::uint8_t a, std::uint8_t b, int q) {
  const int s = a + b;
  return static_cast<std::uint8_t>(s >= q ? s - q : s);
}
inline std::uint8_t sub(std::uint8_t a, std::uint8_t b, int q) {
  const int s = a - b;
  return static_cast<std::uint8_t>(s < 0 ? s + q : s);
}
inline std::uint8_t neg(std::uint8_t a, int q) { return static_cast<std::uint8_t>(a ? q - a : 0); }
inline std::uint8_t mul(std::uint8_t a, std::uint8_t b, int q) {
  return static_cast<std::uint8_t>((a * b) % q);
}
std::uint8_t inv(std::uint8_t a, int q);  // std::domain_error on 0
std::uint8_t reduce(std::int64_t x, int q);

}  // namespace fq

class Fq {
 public:
  Fq() = default;
  Fq(std::int64_t value, int q) : q_(static_cast<std::uint8_t>(q)), v_(fq::reduce(value, q)) {}

  int modulus() const { return q_; }
  std::uint8_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fq inverse() const { return raw(fq::inv(v_, q_), q_); }

  friend Fq operator+(Fq a, Fq b) { return raw(fq::add(a.v_, b.v_, a.q_), a.q_); }
  friend Fq operator-(Fq a, Fq b) { return raw(fq::sub(a.v_, b.v_, a.q_), a.q_); }
  friend Fq operator*(Fq a, Fq b) { return raw(fq::mul(a.v_, b.v_, a.q_), a.q_); }
  friend Fq operator/(Fq a, Fq b) { return a * b.inverse(); }
  friend Fq operator-(Fq a) { return raw(fq::neg(a.v_, a.q_), a.q_); }
  friend bool operator==(Fq a, Fq b) { return a.q_ == b.q_ && a.v_ == b.v_; }

 private:
  static Fq raw(std::uint8_t v, int q) {
    Fq out;
    out.q_ = static_cast<std::uint8_t>(q);
    out.v_ = v;
    return out;
  }

  std::uint8_t q_ = 2;
  std::uint8_t v_ = 0;
};

}  // namespace weylwalk
