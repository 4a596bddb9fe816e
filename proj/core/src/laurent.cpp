#include "weylwalk/laurent.hpp"

#include "weylwalk/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace weylwalk {

LaurentPolynomial::LaurentPolynomial(int q, std::int64_t low, std::vector<std::uint8_t> coeffs)
    : q_(q), low_(low), c_(std::move(coeffs)) {
  for (auto& c : c_) c = static_cast<std::uint8_t>(c % q_);
  normalize();
}

LaurentPolynomial::LaurentPolynomial(const Polynomial& p, std::int64_t shift)
    : LaurentPolynomial(p.q(), shift, p.coeffs()) {}

LaurentPolynomial LaurentPolynomial::monomial(int q, std::int64_t c, std::int64_t exponent) {
  LaurentPolynomial p(q);
  const std::uint8_t v = fq::reduce(c, q);
  if (v) {
    p.low_ = exponent;
    p.c_.push_back(v);
  }
  return p;
}

void LaurentPolynomial::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<std::int64_t>(lead);
  }
  if (c_.empty()) low_ = 0;
}

std::uint8_t LaurentPolynomial::coeff(std::int64_t e) const {
  if (c_.empty() || e < low_ || e > degree()) return 0;
  return c_[static_cast<std::size_t>(e - low_)];
}

LaurentPolynomial LaurentPolynomial::scaled(std::uint8_t s) const {
  LaurentPolynomial out(q_);
  s = static_cast<std::uint8_t>(s % q_);
  if (!s || c_.empty()) return out;
  out.low_ = low_;
  out.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = fq::mul(c_[i], s, q_);
  return out;
}

void LaurentPolynomial::add_term(std::int64_t exponent, std::uint8_t c) {
  c = static_cast<std::uint8_t>(c % q_);
  if (!c) return;
  if (c_.empty()) {
    low_ = exponent;
    c_.push_back(c);
    return;
  }
  if (exponent > degree()) {
    c_.resize(static_cast<std::size_t>(exponent - low_) + 1, 0);
    c_.back() = c;
    return;
  }
  if (exponent < low_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(low_ - exponent), 0);
    low_ = exponent;
    c_.front() = c;
    return;
  }
  auto& slot = c_[static_cast<std::size_t>(exponent - low_)];
  slot = fq::add(slot, c, q_);
  if (!slot) normalize();
}

LaurentPolynomial LaurentPolynomial::split_from(std::int64_t e) {
  LaurentPolynomial high(q_);
  if (c_.empty() || degree() < e) return high;
  if (e <= low_) {
    std::swap(high, *this);
    q_ = high.q_;
    return high;
  }
  const auto cut = static_cast<std::size_t>(e - low_);
  high.low_ = e;
  high.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(cut), c_.end());
  high.normalize();
  c_.resize(cut);
  normalize();
  return high;
}

LaurentPolynomial LaurentPolynomial::below(std::int64_t e) const {
  LaurentPolynomial copy(*this);
  copy.split_from(e);
  return copy;
}

LaurentPolynomial LaurentPolynomial::at_least(std::int64_t e) const {
  LaurentPolynomial copy(*this);
  return copy.split_from(e);
}

Polynomial LaurentPolynomial::to_polynomial() const {
  if (c_.empty()) return Polynomial(q_);
  if (low_ < 0) throw std::domain_error("Laurent polynomial has negative powers");
  std::vector<std::uint8_t> out(static_cast<std::size_t>(low_), 0);
  out.insert(out.end(), c_.begin(), c_.end());
  return Polynomial(q_, std::move(out));
}

void LaurentPolynomial::add_multiple(const LaurentPolynomial& other, std::uint8_t s,
                                     std::int64_t k) {
  s = static_cast<std::uint8_t>(s % q_);
  if (!s || other.c_.empty()) return;
  const std::int64_t olow = other.low_ + k;
  const std::int64_t otop = other.degree() + k;
  if (c_.empty()) {
    low_ = olow;
    c_.assign(other.c_.size(), 0);
  } else {
    if (otop > degree()) c_.resize(static_cast<std::size_t>(otop - low_) + 1, 0);
    if (olow < low_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(low_ - olow), 0);
      low_ = olow;
    }
  }
  std::uint8_t* dst = c_.data() + (olow - low_);
  const std::uint8_t* src = other.c_.data();
  const int q = q_;
  if (s == 1) {
    for (std::size_t i = 0; i < other.c_.size(); ++i) {
      const int v = dst[i] + src[i];
      dst[i] = static_cast<std::uint8_t>(v >= q ? v - q : v);
    }
  } else {
    for (std::size_t i = 0; i < other.c_.size(); ++i)
      dst[i] = static_cast<std::uint8_t>((dst[i] + s * src[i]) % q);
  }
  if (c_.front() == 0 || c_.back() == 0) normalize();
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  add_multiple(other, 1, 0);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  add_multiple(other, static_cast<std::uint8_t>(q_ - 1), 0);
  return *this;
}

namespace {

// Dense product of coefficient runs a[ia0..ia1) and b[ib0..ib1), restricted to
// output indices < limit (relative to the product of the run starts).
std::vector<std::uint8_t> convolve(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b,
                                   std::size_t limit, int q) {
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t len = std::min(full, limit);
  std::vector<std::uint32_t> acc(len, 0);
  const std::size_t amax = std::min(a.size(), len);
  for (std::size_t i = 0; i < amax; ++i) {
    const std::uint32_t ai = a[i];
    if (!ai) continue;
    const std::size_t jmax = std::min(b.size(), len - i);
    std::uint32_t* out = acc.data() + i;
    for (std::size_t j = 0; j < jmax; ++j) out[j] += ai * b[j];
    if ((i & 0xFFFF) == 0xFFFF)
      for (auto& v : acc) v %= static_cast<std::uint32_t>(q);
  }
  std::vector<std::uint8_t> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = static_cast<std::uint8_t>(acc[k] % static_cast<std::uint32_t>(q));
  return out;
}

}  // namespace

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return LaurentPolynomial(a.q_);
  if (a.c_.size() == 1) return b.scaled(a.c_[0]).shifted(a.low_);
  if (b.c_.size() == 1) return a.scaled(b.c_[0]).shifted(b.low_);
  return LaurentPolynomial(a.q_, a.low_ + b.low_,
                           convolve(a.c_, b.c_, a.c_.size() + b.c_.size(), a.q_));
}

bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return a.c_.empty() && !b.c_.empty();
  if (a.low_ != b.low_) return a.low_ < b.low_;
  return a.c_ < b.c_;
}

LaurentPolynomial multiply_below(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                 std::int64_t cap) {
  LaurentPolynomial out(a.q());
  if (a.is_zero() || b.is_zero()) return out;
  const std::int64_t base = a.low() + b.low();
  if (base >= cap) return out;
  const auto limit = static_cast<std::size_t>(cap - base);
  return LaurentPolynomial(a.q(), base, convolve(a.coeffs(), b.coeffs(), limit, a.q()));
}

std::string to_string(const LaurentPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::int64_t e = p.degree(); e >= p.low(); --e) {
    const int c = p.coeff(e);
    if (!c) continue;
    if (!out.empty()) out += '+';
    if (e == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + '*';
    out += 't';
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

}  // namespace weylwalk
