#include "weylwalk/padic.hpp"

#include "weylwalk/finite_field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <stdexcept>

namespace weylwalk {

RationalFunction determinant(const RationalFunctionMatrix& m) {
  const std::size_t n = m.size();
  RationalFunctionMatrix a = m;
  RationalFunction det = RationalFunction::one(m.q());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k).is_zero()) ++piv;
    if (piv == n) return RationalFunction::zero(m.q());
    if (piv != k) {
      a.swap_rows(piv, k);
      det = -det;
    }
    det *= a(k, k);
    const RationalFunction inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      a.add_row_multiple(i, k, -(a(i, k) * inv));
    }
  }
  return det;
}

LaurentPolynomial determinant(const LaurentMatrix& m) {
  // Laplace expansion along rows, memoized over the set of used columns.
  const std::size_t n = m.size();
  if (n == 0) return LaurentPolynomial::one(m.q());
  std::vector<LaurentPolynomial> minors(std::size_t{1} << n, LaurentPolynomial(m.q()));
  minors[0] = LaurentPolynomial::one(m.q());
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    LaurentPolynomial acc(m.q());
    int sign_index = 0;
    for (std::size_t c = n; c-- > 0;) {
      if (!(mask >> c & 1)) continue;
      // Sign counts columns of the mask to the right of c.
      const std::size_t rest = mask & ~(std::size_t{1} << c);
      if (!m(row, c).is_zero() && !minors[rest].is_zero()) {
        const LaurentPolynomial term = m(row, c) * minors[rest];
        if (sign_index % 2) acc -= term;
        else acc += term;
      }
      ++sign_index;
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

RationalFunctionMatrix inverse(const RationalFunctionMatrix& m) {
  const std::size_t n = m.size();
  RationalFunctionMatrix a = m;
  RationalFunctionMatrix inv = RationalFunctionMatrix::identity(n, m.q());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k).is_zero()) ++piv;
    if (piv == n) throw std::domain_error("matrix is singular");
    a.swap_rows(piv, k);
    inv.swap_rows(piv, k);
    const RationalFunction p = a(k, k).inverse();
    a.scale_row(k, p);
    inv.scale_row(k, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const RationalFunction f = -a(i, k);
      a.add_row_multiple(i, k, f);
      inv.add_row_multiple(i, k, f);
    }
  }
  return inv;
}

RationalFunctionMatrix to_rational(const LaurentMatrix& m) {
  RationalFunctionMatrix out(m.size(), m.q());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = RationalFunction(m(i, j));
  return out;
}

LaurentMatrix to_laurent(const RationalFunctionMatrix& m) {
  LaurentMatrix out(m.size(), m.q());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      auto entry = m(i, j).to_laurent();
      if (!entry)
        throw std::invalid_argument("entry " + to_string(m(i, j)) +
                                    " is not a Laurent polynomial");
      out(i, j) = std::move(*entry);
    }
  return out;
}

RationalFunctionMatrix translation_matrix(int q, std::span<const std::int64_t> lambda) {
  RationalFunctionMatrix m(lambda.size(), q);
  for (std::size_t i = 0; i < lambda.size(); ++i) m(i, i) = RationalFunction::monomial(q, 1, -lambda[i]);
  return m;
}

LaurentMatrix translation_laurent(int q, std::span<const std::int64_t> lambda) {
  LaurentMatrix m(lambda.size(), q);
  for (std::size_t i = 0; i < lambda.size(); ++i) m(i, i) = LaurentPolynomial::monomial(q, 1, -lambda[i]);
  return m;
}

bool in_maximal_compact(const RationalFunctionMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m(i, j).is_integral()) return false;
  return determinant(m).valuation() == 0;
}

bool is_upper_unitriangular(const RationalFunctionMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m(i, i).is_one()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!m(i, j).is_zero()) return false;
  }
  return true;
}

namespace {

// Splits a nonzero f as t^v * unit.
RationalFunction unit_part(const RationalFunction& f) {
  return f * RationalFunction::monomial(f.q(), 1, -f.valuation());
}

}  // namespace

CartanDecomposition cartan_decomposition(const RationalFunctionMatrix& m) {
  const std::size_t n = m.size();
  const int q = m.q();
  RationalFunctionMatrix a = m;
  RationalFunctionMatrix left = RationalFunctionMatrix::identity(n, q);
  RationalFunctionMatrix right = RationalFunctionMatrix::identity(n, q);
  // Invariant: m = left * a * right.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pi = n, pj = n;
    std::int64_t best = kInfiniteValuation;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const std::int64_t v = a(i, j).valuation();
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi == n) throw std::domain_error("matrix is singular");
    a.swap_rows(pi, k);
    left.swap_columns(pi, k);
    a.swap_columns(pj, k);
    right.swap_rows(pj, k);
    const RationalFunction pinv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const RationalFunction f = a(i, k) * pinv;
      a.add_row_multiple(i, k, -f);
      left.add_column_multiple(k, i, f);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j).is_zero()) continue;
      const RationalFunction g = a(k, j) * pinv;
      a.add_column_multiple(j, k, -g);
      right.add_row_multiple(k, j, g);
    }
  }
  CartanDecomposition out;
  out.lambda.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.lambda[k] = -a(k, k).valuation();
    right.scale_row(k, unit_part(a(k, k)));
  }
  // The pivot rule already yields nondecreasing valuations.
  if (!std::is_sorted(out.lambda.begin(), out.lambda.end(), std::greater<>()))
    throw std::logic_error("Cartan pivots out of order");
  out.k1 = std::move(left);
  out.k2 = std::move(right);
  return out;
}

std::vector<std::int64_t> smith_valuations(const RationalFunctionMatrix& m) {
  return cartan_decomposition(m).lambda;
}

IwasawaDecomposition iwasawa_decomposition(const RationalFunctionMatrix& m) {
  const std::size_t n = m.size();
  const int q = m.q();
  RationalFunctionMatrix a = m;
  RationalFunctionMatrix u = RationalFunctionMatrix::identity(n, q);
  RationalFunctionMatrix k = RationalFunctionMatrix::identity(n, q);
  // Invariant: m = u * a * k.
  IwasawaDecomposition out;
  out.mu.assign(n, 0);
  for (std::size_t row = n; row-- > 0;) {
    std::size_t pj = n;
    std::int64_t best = kInfiniteValuation;
    for (std::size_t j = 0; j <= row; ++j) {
      const std::int64_t v = a(row, j).valuation();
      if (v < best) {
        best = v;
        pj = j;
      }
    }
    if (pj == n) throw std::domain_error("matrix is singular");
    a.swap_columns(pj, row);
    k.swap_rows(pj, row);
    const RationalFunction pinv = a(row, row).inverse();
    for (std::size_t j = 0; j < row; ++j) {
      if (a(row, j).is_zero()) continue;
      const RationalFunction g = a(row, j) * pinv;
      a.add_column_multiple(j, row, -g);
      k.add_row_multiple(row, j, g);
    }
    const RationalFunction unit = unit_part(a(row, row));
    a.scale_column(row, unit.inverse());
    k.scale_row(row, unit);
    const RationalFunction dinv = a(row, row).inverse();
    for (std::size_t i = 0; i < row; ++i) {
      if (a(i, row).is_zero()) continue;
      const RationalFunction f = a(i, row) * dinv;
      a.add_row_multiple(i, row, -f);
      u.add_column_multiple(row, i, f);
    }
    out.mu[row] = -best;
  }
  out.u = std::move(u);
  out.k = std::move(k);
  return out;
}

std::vector<std::int64_t> iwasawa_valuations(const RationalFunctionMatrix& m) {
  return iwasawa_decomposition(m).mu;
}

// ---------------------------------------------------------------------------
// Determinantal divisors of Laurent matrices

namespace {

class MinorEvaluator {
 public:
  MinorEvaluator(const LaurentMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
      : m_(m), rows_(std::move(rows)), cols_(std::move(cols)), k_(rows_.size()) {
    row_min_.assign(k_ + 1, 0);
    for (std::size_t r = k_; r-- > 0;) {
      std::int64_t lo = kInfiniteValuation;
      for (std::size_t c : cols_) lo = std::min(lo, m_(rows_[r], c).valuation());
      row_min_[r] = lo == kInfiniteValuation ? kInfiniteValuation
                    : row_min_[r + 1] == kInfiniteValuation ? kInfiniteValuation
                                                            : lo + row_min_[r + 1];
    }
  }

  // Valuation of the minor if it is below ceiling, otherwise kInfiniteValuation.
  std::int64_t valuation_below(std::int64_t ceiling) {
    bound_ = kInfiniteValuation;
    top_ = std::numeric_limits<std::int64_t>::min();
    used_.assign(k_, false);
    bounds(0, 0, 0);
    if (bound_ == kInfiniteValuation || bound_ >= ceiling) return kInfiniteValuation;
    std::int64_t window = 8;
    for (;;) {
      const std::int64_t cap = std::min(ceiling, bound_ + window);
      sum_ = LaurentPolynomial(m_.q());
      cap_ = cap;
      used_.assign(k_, false);
      expand(0, LaurentPolynomial::one(m_.q()), false);
      if (!sum_.is_zero()) return sum_.valuation();
      if (cap == ceiling || cap > top_) return kInfiniteValuation;
      window *= 2;
    }
  }

 private:
  // Lowest and highest exponents any permutation term can reach.
  void bounds(std::size_t r, std::int64_t lo, std::int64_t hi) {
    if (r == k_) {
      bound_ = std::min(bound_, lo);
      top_ = std::max(top_, hi);
      return;
    }
    for (std::size_t c = 0; c < k_; ++c) {
      if (used_[c]) continue;
      const LaurentPolynomial& e = m_(rows_[r], cols_[c]);
      if (e.is_zero()) continue;
      used_[c] = true;
      bounds(r + 1, lo + e.valuation(), hi + e.degree());
      used_[c] = false;
    }
  }

  void expand(std::size_t r, const LaurentPolynomial& partial, bool odd) {
    if (r == k_) {
      if (odd) sum_ -= partial;
      else sum_ += partial;
      return;
    }
    // Later rows contribute at least row_min_[r + 1].
    const std::int64_t rest = row_min_[r + 1];
    if (rest == kInfiniteValuation) return;
    std::size_t inversions_before = 0;
    for (std::size_t c = 0; c < k_; ++c) {
      if (used_[c]) {
        ++inversions_before;
        continue;
      }
      const LaurentPolynomial& e = m_(rows_[r], cols_[c]);
      // Column c contributes (number of unused columns left of c) transpositions.
      const bool flip = ((c - inversions_before) % 2) == 1;
      if (e.is_zero()) continue;
      const std::int64_t local_cap = cap_ - rest;
      if (partial.valuation() + e.valuation() >= local_cap) continue;
      LaurentPolynomial next = multiply_below(partial, e, local_cap);
      if (next.is_zero()) continue;
      used_[c] = true;
      expand(r + 1, next, odd != flip);
      used_[c] = false;
    }
  }

  const LaurentMatrix& m_;
  std::vector<std::size_t> rows_, cols_;
  std::size_t k_;
  std::vector<std::int64_t> row_min_;
  std::vector<bool> used_;
  std::int64_t bound_ = 0, top_ = 0, cap_ = 0;
  LaurentPolynomial sum_;
};

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<std::int64_t> smith_valuations(const LaurentMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::int64_t> delta(n + 1, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    std::int64_t best = kInfiniteValuation;
    if (k == 1) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) best = std::min(best, m(i, j).valuation());
    } else {
      for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
        for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
          MinorEvaluator eval(m, rows, cols);
          best = std::min(best, eval.valuation_below(best));
        });
      });
    }
    if (best == kInfiniteValuation) throw std::domain_error("matrix is singular");
    delta[k] = best;
  }
  std::vector<std::int64_t> lambda(n);
  for (std::size_t k = 0; k < n; ++k) lambda[k] = -(delta[k + 1] - delta[k]);
  return lambda;
}

// ---------------------------------------------------------------------------
// Entry parser

namespace {

class EntryParser {
 public:
  EntryParser(std::string_view text, int q) : text_(text), q_(q) {}

  RationalFunction parse() {
    RationalFunction v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse entry '" + std::string(text_) + "': " + what +
                                " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  RationalFunction expr() {
    RationalFunction acc(q_);
    bool first = true;
    for (;;) {
      char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else if (!first) {
        return acc;
      }
      RationalFunction t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
  }

  RationalFunction term() {
    RationalFunction acc = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= power();
      } else if (c == '/') {
        ++pos_;
        const RationalFunction d = power();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else if (c == 't' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::int64_t e = integer();
    if (e > 100000) fail("exponent too large");
    if (negative && base.is_zero()) fail("division by zero");
    RationalFunction out = RationalFunction::one(q_);
    for (std::int64_t i = 0; i < e; ++i) out *= base;
    return negative ? out.inverse() : out;
  }

  RationalFunction atom() {
    const char c = peek();
    if (c == 't') {
      ++pos_;
      return RationalFunction::monomial(q_, 1, 1);
    }
    if (c == '(') {
      ++pos_;
      RationalFunction v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RationalFunction::monomial(q_, integer(), 0);
    fail("expected a number, 't' or '('");
  }

  std::int64_t integer() {
    skip();
    std::int64_t v = 0;
    const char* begin = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  std::string_view text_;
  int q_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_entry(std::string_view text, int q) {
  require_supported_modulus(q);
  return EntryParser(text, q).parse();
}

RationalFunctionMatrix parse_matrix(const std::vector<std::vector<std::string>>& rows, int q) {
  const std::size_t n = rows.size();
  if (n == 0) throw std::invalid_argument("empty matrix");
  RationalFunctionMatrix m(n, q);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_entry(rows[i][j], q);
  }
  return m;
}

}  // namespace weylwalk
