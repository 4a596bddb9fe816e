#pragma once

// Laurent polynomials over F_q: finitely many terms c_e t^e with e in Z.
// Stored as the lowest exponent plus a dense coefficient run whose first and
// last entries are nonzero. Appending or dropping terms at the top is cheap,
// which is the access pattern of the lattice reductions in the building code.

#include "weylwalk/polynomial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace weylwalk {

class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(int q) : q_(q) {}
  LaurentPolynomial(int q, std::int64_t low, std::vector<std::uint8_t> coeffs);
  explicit LaurentPolynomial(const Polynomial& p, std::int64_t shift = 0);

  static LaurentPolynomial zero(int q) { return LaurentPolynomial(q); }
  static LaurentPolynomial one(int q) { return monomial(q, 1, 0); }
  static LaurentPolynomial monomial(int q, std::int64_t c, std::int64_t exponent);

  int q() const { return q_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return low_ == 0 && c_.size() == 1 && c_[0] == 1; }
  bool is_monomial() const { return c_.size() == 1; }
  std::size_t term_span() const { return c_.size(); }
  // Lowest exponent; kInfiniteValuation for zero.
  std::int64_t valuation() const { return c_.empty() ? kInfiniteValuation : low_; }
  // Highest exponent; undefined for zero.
  std::int64_t degree() const { return low_ + static_cast<std::int64_t>(c_.size()) - 1; }
  std::uint8_t coeff(std::int64_t e) const;
  std::int64_t low() const { return low_; }
  const std::vector<std::uint8_t>& coeffs() const { return c_; }

  // Multiply by t^k.
  void shift(std::int64_t k) {
    if (!c_.empty()) low_ += k;
  }
  LaurentPolynomial shifted(std::int64_t k) const {
    LaurentPolynomial out(*this);
    out.shift(k);
    return out;
  }
  LaurentPolynomial scaled(std::uint8_t s) const;
  void add_term(std::int64_t exponent, std::uint8_t c);

  // Removes the terms of exponent >= e and returns them.
  LaurentPolynomial split_from(std::int64_t e);
  LaurentPolynomial below(std::int64_t e) const;
  LaurentPolynomial at_least(std::int64_t e) const;
  // Requires valuation >= 0.
  Polynomial to_polynomial() const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  // this += s * t^k * other
  void add_multiple(const LaurentPolynomial& other, std::uint8_t s, std::int64_t k);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
    return a.scaled(static_cast<std::uint8_t>(a.q_ - 1));
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.c_ == b.c_ && (a.c_.empty() || a.low_ == b.low_);
  }
  friend bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b);

 private:
  void normalize();

  int q_ = 2;
  std::int64_t low_ = 0;
  std::vector<std::uint8_t> c_;
};

// Terms of a*b with exponent < cap; costs only the overlapping window.
LaurentPolynomial multiply_below(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                 std::int64_t cap);

// Highest terms first, e.g. "t^2+2*t+1+t^-3"; zero prints as "0".
std::string to_string(const LaurentPolynomial& p);

}  // namespace weylwalk
