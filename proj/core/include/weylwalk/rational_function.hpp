#pragma once

// Elements of F_q(t) as reduced fractions with a monic denominator.

#include "weylwalk/laurent.hpp"
#include "weylwalk/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace weylwalk {

class RationalFunction {
 public:
  RationalFunction() : num_(2), den_(Polynomial::constant(2, 1)) {}
  explicit RationalFunction(int q) : num_(q), den_(Polynomial::constant(q, 1)) {}
  explicit RationalFunction(Polynomial num);
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(const LaurentPolynomial& p);

  static RationalFunction zero(int q) { return RationalFunction(q); }
  static RationalFunction one(int q) { return RationalFunction(Polynomial::constant(q, 1)); }
  static RationalFunction monomial(int q, std::int64_t c, std::int64_t exponent);

  int q() const { return num_.q(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  // v(p/q) = v(p) - v(q); kInfiniteValuation for zero.
  std::int64_t valuation() const;
  // Lies in o = F_q[[t]] intersected with F_q(t).
  bool is_integral() const { return valuation() >= 0; }

  RationalFunction inverse() const;
  // Present iff the denominator is a power of t.
  std::optional<LaurentPolynomial> to_laurent() const;
  // Terms of the t-adic expansion with exponent < cap.
  LaurentPolynomial expansion_below(std::int64_t cap) const;
  // Value at t = 0 of an integral element.
  std::uint8_t residue() const;

  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction& operator/=(const RationalFunction& other);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  void reduce();

  Polynomial num_;
  Polynomial den_;
};

// "0", "t^2+1", "(t^2+1)/(t)" ...
std::string to_string(const RationalFunction& f);

}  // namespace weylwalk
