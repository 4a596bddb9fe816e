#include "weylwalk/polynomial.hpp"

#include "weylwalk/finite_field.hpp"

#include <stdexcept>

namespace weylwalk {

Polynomial::Polynomial(int q, std::vector<std::uint8_t> coeffs) : q_(q), c_(std::move(coeffs)) {
  for (auto& c : c_) c = static_cast<std::uint8_t>(c % q_);
  trim();
}

Polynomial Polynomial::constant(int q, std::int64_t c) { return monomial(q, c, 0); }

Polynomial Polynomial::monomial(int q, std::int64_t c, std::size_t degree) {
  Polynomial p(q);
  const std::uint8_t v = fq::reduce(c, q);
  if (v) {
    p.c_.assign(degree + 1, 0);
    p.c_[degree] = v;
  }
  return p;
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t Polynomial::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) return static_cast<std::int64_t>(i);
  return kInfiniteValuation;
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  return scaled(fq::inv(c_.back(), q_));
}

Polynomial Polynomial::scaled(std::uint8_t s) const {
  Polynomial out(q_);
  if (s % q_ == 0) return out;
  out.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = fq::mul(c_[i], s, q_);
  return out;
}

Polynomial Polynomial::shifted_up(std::size_t k) const {
  Polynomial out(q_);
  if (c_.empty()) return out;
  out.c_.assign(k, 0);
  out.c_.insert(out.c_.end(), c_.begin(), c_.end());
  return out;
}

Polynomial Polynomial::shifted_down(std::size_t k) const {
  for (std::size_t i = 0; i < k && i < c_.size(); ++i)
    if (c_[i]) throw std::domain_error("polynomial not divisible by t^k");
  Polynomial out(q_);
  if (k < c_.size()) out.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end());
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0);
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] = fq::add(c_[i], other.c_[i], q_);
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0);
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] = fq::sub(c_[i], other.c_[i], q_);
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.q_);
  if (a.c_.empty() || b.c_.empty()) return out;
  const int q = a.q_;
  std::vector<int> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const int ai = a.c_[i];
    if (!ai) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += ai * b.c_[j];
    // Keep the accumulators small enough never to overflow.
    if ((i & 1023) == 1023)
      for (auto& v : acc) v %= q;
  }
  out.c_.resize(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) out.c_[k] = static_cast<std::uint8_t>(acc[k] % q);
  out.trim();
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const int q = a.q();
  std::vector<std::uint8_t> rem = a.coeffs();
  const auto& d = b.coeffs();
  if (rem.size() < d.size()) return {Polynomial(q), a};
  const std::uint8_t lead_inv = fq::inv(d.back(), q);
  std::vector<std::uint8_t> quot(rem.size() - d.size() + 1, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const std::uint8_t top = rem[k + d.size() - 1];
    if (!top) continue;
    const std::uint8_t f = fq::mul(top, lead_inv, q);
    quot[k] = f;
    for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] = fq::sub(rem[k + j], fq::mul(f, d[j], q), q);
  }
  return {Polynomial(q, std::move(quot)), Polynomial(q, std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const int c = p.coeffs()[i];
    if (!c) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + '*';
    out += 't';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

}  // namespace weylwalk
