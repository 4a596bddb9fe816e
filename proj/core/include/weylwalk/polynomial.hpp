#pragma once

// Dense univariate polynomials over F_q, coefficients stored low to high and
// trimmed so the leading coefficient is nonzero.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace weylwalk {

// Valuation of zero.
inline constexpr std::int64_t kInfiniteValuation = std::numeric_limits<std::int64_t>::max();

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int q) : q_(q) {}
  Polynomial(int q, std::vector<std::uint8_t> coeffs);

  static Polynomial constant(int q, std::int64_t c);
  static Polynomial monomial(int q, std::int64_t c, std::size_t degree);

  int q() const { return q_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  // -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  // Index of the lowest nonzero coefficient; kInfiniteValuation for zero.
  std::int64_t valuation() const;
  std::uint8_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint8_t leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint8_t>& coeffs() const { return c_; }

  Polynomial monic() const;
  Polynomial scaled(std::uint8_t s) const;
  // Multiplication by t^k, k >= 0.
  Polynomial shifted_up(std::size_t k) const;
  // Division by t^k; the low k coefficients must vanish.
  Polynomial shifted_down(std::size_t k) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return a.scaled(static_cast<std::uint8_t>(a.q_ - 1)); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();

  int q_ = 2;
  std::vector<std::uint8_t> c_;
};

// Quotient and remainder; throws std::domain_error for a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

std::string to_string(const Polynomial& p);

}  // namespace weylwalk
