#include "weylwalk/rational_function.hpp"

#include "weylwalk/finite_field.hpp"

#include <stdexcept>

namespace weylwalk {

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.q(), 1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

RationalFunction::RationalFunction(const LaurentPolynomial& p) : RationalFunction(p.q()) {
  if (p.is_zero()) return;
  if (p.low() >= 0) {
    num_ = p.to_polynomial();
  } else {
    num_ = LaurentPolynomial(p.q(), 0, p.coeffs()).to_polynomial();
    den_ = Polynomial::monomial(p.q(), 1, static_cast<std::size_t>(-p.low()));
  }
}

RationalFunction RationalFunction::monomial(int q, std::int64_t c, std::int64_t exponent) {
  return RationalFunction(LaurentPolynomial::monomial(q, c, exponent));
}

void RationalFunction::reduce() {
  const int q = num_.q();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(q, 1);
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const std::uint8_t lead = den_.leading();
  if (lead != 1) {
    const std::uint8_t s = fq::inv(lead, q);
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }
}

std::int64_t RationalFunction::valuation() const {
  if (num_.is_zero()) return kInfiniteValuation;
  return num_.valuation() - den_.valuation();
}

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return RationalFunction(den_, num_);
}

std::optional<LaurentPolynomial> RationalFunction::to_laurent() const {
  const std::int64_t d = den_.degree();
  if (den_.valuation() != d) return std::nullopt;
  return LaurentPolynomial(num_, -d);
}

LaurentPolynomial RationalFunction::expansion_below(std::int64_t cap) const {
  const int q = num_.q();
  LaurentPolynomial out(q);
  if (num_.is_zero()) return out;
  const std::int64_t vn = num_.valuation();
  const std::int64_t vd = den_.valuation();
  const std::int64_t start = vn - vd;
  if (start >= cap) return out;
  const auto terms = static_cast<std::size_t>(cap - start);
  // Power series division of N' = num / t^vn by D' = den / t^vd, D'(0) != 0.
  const Polynomial n = num_.shifted_down(static_cast<std::size_t>(vn));
  const Polynomial d = den_.shifted_down(static_cast<std::size_t>(vd));
  const std::uint8_t d0_inv = fq::inv(d.coeff(0), q);
  std::vector<std::uint8_t> rem(terms, 0);
  for (std::size_t i = 0; i < terms && i < n.coeffs().size(); ++i) rem[i] = n.coeffs()[i];
  std::vector<std::uint8_t> series(terms, 0);
  const auto& dc = d.coeffs();
  for (std::size_t k = 0; k < terms; ++k) {
    const std::uint8_t c = fq::mul(rem[k], d0_inv, q);
    series[k] = c;
    if (!c) continue;
    for (std::size_t j = 1; j < dc.size() && k + j < terms; ++j)
      rem[k + j] = fq::sub(rem[k + j], fq::mul(c, dc[j], q), q);
  }
  return LaurentPolynomial(q, start, std::move(series));
}

std::uint8_t RationalFunction::residue() const {
  const std::int64_t v = valuation();
  if (v < 0) throw std::domain_error("residue of a non-integral element");
  if (v > 0) return 0;
  return fq::mul(num_.coeff(0), fq::inv(den_.coeff(0), num_.q()), num_.q());
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  if (other.is_zero()) return *this;
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) {
  return *this += -other;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = other;
  num_ = num_ * other.num_;
  den_ = den_ * other.den_;
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) {
  return *this *= other.inverse();
}

std::string to_string(const RationalFunction& f) {
  if (f.denominator().is_one()) return to_string(f.numerator());
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) + ")";
}

}  // namespace weylwalk
