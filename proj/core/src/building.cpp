#include "weylwalk/building.hpp"

#include "weylwalk/finite_field.hpp"
#include "weylwalk/padic.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace weylwalk {

void BuildingParams::validate() const {
  if (rank < 1 || rank > 6)
    throw std::invalid_argument("building rank must be in 1..6, got " + std::to_string(rank));
  require_supported_modulus(q);
}

// ---------------------------------------------------------------------------
// Vertex

Vertex Vertex::base(const BuildingParams& params) {
  params.validate();
  Vertex v;
  v.m_ = LaurentMatrix::identity(params.n(), params.q);
  v.a_.assign(params.n(), 0);
  return v;
}

Vertex Vertex::from_triangular(LaurentMatrix m) {
  const std::size_t n = m.size();
  Vertex v;
  v.a_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (!m(i, j).is_zero()) throw std::invalid_argument("matrix is not upper triangular");
    const LaurentPolynomial& d = m(i, i);
    if (!d.is_monomial()) throw std::invalid_argument("diagonal entry is not a monomial");
    v.a_[i] = -d.valuation();
    if (d.coeffs()[0] != 1) m.scale_column(i, LaurentPolynomial::monomial(m.q(), fq::inv(d.coeffs()[0], m.q()), 0));
  }
  v.m_ = std::move(m);
  v.reduce();
  return v;
}

void Vertex::reduce() {
  const std::size_t n = a_.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      LaurentPolynomial high = m_(i, j).split_from(-a_[i]);
      if (high.is_zero()) continue;
      // Subtract (high * t^a_i) * column i; its row-i entry is exactly high.
      high.shift(a_[i]);
      for (std::size_t k = 0; k < i; ++k) {
        if (m_(k, i).is_zero()) continue;
        m_(k, j) -= high * m_(k, i);
      }
    }
  }
  const auto total = std::accumulate(a_.begin(), a_.end(), std::int64_t{0});
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t k = total / nn;
  if (total % nn < 0) --k;
  if (k != 0) {
    for (auto& x : a_) x -= k;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m_(i, j).shift(k);
  }
}

int Vertex::type() const {
  const auto total = std::accumulate(a_.begin(), a_.end(), std::int64_t{0});
  const auto nn = static_cast<std::int64_t>(a_.size());
  return static_cast<int>(((total % nn) + nn) % nn);
}

bool Vertex::in_standard_apartment() const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    for (std::size_t j = i + 1; j < a_.size(); ++j)
      if (!m_(i, j).is_zero()) return false;
  return true;
}

bool operator<(const Vertex& x, const Vertex& y) {
  if (x.a_ != y.a_) return x.a_ < y.a_;
  const std::size_t n = x.a_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x.m_(i, j) < y.m_(i, j)) return true;
      if (y.m_(i, j) < x.m_(i, j)) return false;
    }
  return false;
}

std::string to_string(const Vertex& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) out += ", ";
      out += to_string(v.matrix()(i, j));
    }
  }
  return out + "]";
}

std::size_t VertexHash::operator()(const Vertex& v) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (auto a : v.exponents()) mix(static_cast<std::uint64_t>(a));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const auto& e = v.matrix()(i, j);
      mix(static_cast<std::uint64_t>(e.low()));
      for (auto c : e.coeffs()) mix(c);
    }
  return h;
}

// ---------------------------------------------------------------------------
// Canonical forms

Vertex canonicalize(const RationalFunctionMatrix& m) {
  const std::size_t n = m.size();
  const int q = m.q();
  RationalFunctionMatrix a = m;
  // Column operations in K make the matrix upper triangular with t-power diagonal.
  std::vector<std::int64_t> exps(n);
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
    const RationalFunction pinv = a(row, row).inverse();
    for (std::size_t j = 0; j < row; ++j)
      if (!a(row, j).is_zero()) a.add_column_multiple(j, row, -(a(row, j) * pinv));
    a.scale_column(row, RationalFunction::monomial(q, 1, best) * pinv);
    exps[row] = -best;
  }
  // Reduce the entries above the diagonal to their principal parts.
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      const RationalFunction& e = a(i, j);
      if (e.is_zero()) continue;
      const RationalFunction low(e.expansion_below(-exps[i]));
      const RationalFunction c = (e - low) * RationalFunction::monomial(q, 1, exps[i]);
      if (c.is_zero()) continue;
      for (std::size_t k = 0; k <= i; ++k)
        if (!a(k, i).is_zero()) a(k, j) -= c * a(k, i);
    }
  }
  return Vertex::from_triangular(to_laurent(a));
}

namespace {

// Inverse of a unit power series, truncated to `terms` coefficients.
LaurentPolynomial unit_inverse(const LaurentPolynomial& unit, std::int64_t terms) {
  const int q = unit.q();
  const auto len = static_cast<std::size_t>(std::max<std::int64_t>(terms, 1));
  const auto& c = unit.coeffs();
  std::vector<std::uint8_t> out(len, 0);
  const std::uint8_t c0inv = fq::inv(c[0], q);
  out[0] = c0inv;
  for (std::size_t k = 1; k < len; ++k) {
    int acc = 0;
    const std::size_t jmax = std::min(k, c.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc += c[j] * out[k - j];
    out[k] = fq::mul(fq::neg(fq::reduce(acc, q), q), c0inv, q);
  }
  return LaurentPolynomial(q, 0, std::move(out));
}

using Column = std::vector<LaurentPolynomial>;

void truncate_column(Column& col, std::int64_t cap) {
  for (auto& e : col) e.split_from(cap);
}

bool is_zero_column(const Column& col) {
  return std::all_of(col.begin(), col.end(), [](const LaurentPolynomial& e) { return e.is_zero(); });
}

}  // namespace

Vertex canonicalize(const LaurentMatrix& g, std::int64_t det_valuation) {
  const std::size_t n = g.size();
  const int q = g.q();
  std::int64_t minval = kInfiniteValuation;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) minval = std::min(minval, g(i, j).valuation());
  if (minval == kInfiniteValuation) throw std::domain_error("matrix is singular");
  const std::int64_t cap = det_valuation - static_cast<std::int64_t>(n - 1) * minval;

  std::vector<Column> active;
  for (std::size_t j = 0; j < n; ++j) {
    Column col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = g(i, j);
    truncate_column(col, cap);
    if (!is_zero_column(col)) active.push_back(std::move(col));
  }

  LaurentMatrix h(n, q);
  for (std::size_t row = n; row-- > 0;) {
    std::size_t p = active.size();
    std::int64_t best = kInfiniteValuation;
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::int64_t v = active[k][row].valuation();
      if (v < best) {
        best = v;
        p = k;
      }
    }
    if (p == active.size()) {
      // Only t^cap e_row survives in this row.
      h(row, row) = LaurentPolynomial::monomial(q, 1, cap);
      continue;
    }
    Column piv = std::move(active[p]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(p));
    const LaurentPolynomial unit = piv[row].shifted(-best);
    if (!unit.is_one()) {
      const LaurentPolynomial inv = unit_inverse(unit, cap - minval);
      for (std::size_t i = 0; i <= row; ++i)
        if (!piv[i].is_zero()) piv[i] = multiply_below(piv[i], inv, cap);
    }
    for (auto& col : active) {
      if (col[row].is_zero()) continue;
      const LaurentPolynomial c = col[row].shifted(-best);
      for (std::size_t i = 0; i <= row; ++i) {
        if (piv[i].is_zero()) continue;
        col[i] -= multiply_below(c, piv[i], cap);
      }
    }
    // t^(cap-best) * piv minus t^cap e_row stays in the lattice.
    Column extra(n, LaurentPolynomial(q));
    for (std::size_t i = 0; i < row; ++i) extra[i] = piv[i].shifted(cap - best);
    truncate_column(extra, cap);
    for (std::size_t i = 0; i < n; ++i) h(i, row) = std::move(piv[i]);
    std::erase_if(active, is_zero_column);
    if (!is_zero_column(extra)) active.push_back(std::move(extra));
  }
  return Vertex::from_triangular(std::move(h));
}

Vertex canonicalize(const LaurentMatrix& g) {
  const LaurentPolynomial det = determinant(g);
  if (det.is_zero()) throw std::domain_error("matrix is singular");
  return canonicalize(g, det.valuation());
}

Vertex translation_vertex(int q, std::span<const std::int64_t> mu) {
  return Vertex::from_triangular(translation_laurent(q, mu));
}

Vertex translation_vertex(int q, const LatticeVector& mu) {
  if (!mu.is_integral()) throw std::invalid_argument("translation must lie in the coweight lattice");
  const std::size_t n = mu.rank() + 1;
  std::vector<std::int64_t> exps(n, 0);
  for (std::size_t i = n - 1; i-- > 0;) exps[i] = exps[i + 1] + mu[i].numerator();
  return translation_vertex(q, exps);
}

LaurentMatrix inverse_matrix(const Vertex& v) {
  const std::size_t n = v.size();
  const int q = v.q();
  const LaurentMatrix& g = v.matrix();
  const auto& a = v.exponents();
  LaurentMatrix x(n, q);
  for (std::size_t j = 0; j < n; ++j) {
    x(j, j) = LaurentPolynomial::monomial(q, 1, a[j]);
    for (std::size_t i = j; i-- > 0;) {
      LaurentPolynomial acc(q);
      for (std::size_t k = i + 1; k <= j; ++k)
        if (!g(i, k).is_zero() && !x(k, j).is_zero()) acc += g(i, k) * x(k, j);
      acc.shift(a[i]);
      x(i, j) = -acc;
    }
  }
  return x;
}

LatticeVector coweight_from_exponents(std::span<const std::int64_t> lambda) {
  LatticeVector out(lambda.size() - 1);
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i) out[i] = lambda[i] - lambda[i + 1];
  return out;
}

LatticeVector vector_distance(const Vertex& x, const Vertex& y) {
  if (x.size() != y.size() || x.q() != y.q()) throw std::invalid_argument("vertices from different buildings");
  const std::vector<std::int64_t> lambda = smith_valuations(inverse_matrix(x) * y.matrix());
  return coweight_from_exponents(lambda);
}

LatticeVector distance_from_base(const Vertex& x) {
  const std::vector<std::int64_t> lambda = smith_valuations(x.matrix());
  return coweight_from_exponents(lambda);
}

LatticeVector busemann(const Vertex& x) {
  const auto& a = x.exponents();
  LatticeVector out(a.size() - 1);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) out[i] = a[i] - a[i + 1];
  return out;
}

// ---------------------------------------------------------------------------
// Neighbours

std::size_t schubert_dimension(std::size_t n, const std::vector<std::size_t>& pivots) {
  std::size_t dim = 0;
  std::size_t seen = 0;
  for (std::size_t s : pivots) {
    if (s >= n) throw std::invalid_argument("pivot out of range");
    dim += s - seen;
    ++seen;
  }
  return dim;
}

std::vector<std::vector<std::size_t>> pivot_sets(std::size_t n, std::size_t i) {
  std::vector<std::vector<std::size_t>> out;
  if (i > n) return out;
  std::vector<std::size_t> idx(i);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    out.push_back(idx);
    std::size_t k = i;
    while (k > 0 && idx[k - 1] == n - i + k - 1) --k;
    if (k == 0) return out;
    ++idx[k - 1];
    for (std::size_t j = k; j < i; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Subspace> subspaces(std::size_t n, int q, std::size_t i) {
  std::vector<Subspace> out;
  for (auto& pivots : pivot_sets(n, i)) {
    const std::size_t dim = schubert_dimension(n, pivots);
    std::vector<std::uint8_t> free(dim, 0);
    for (;;) {
      out.push_back({pivots, free});
      std::size_t k = 0;
      while (k < dim && free[k] == q - 1) free[k++] = 0;
      if (k == dim) break;
      ++free[k];
    }
  }
  return out;
}

LatticeVector pivot_offset(std::size_t n, const std::vector<std::size_t>& pivots) {
  std::vector<std::int64_t> b(n, 0);
  for (std::size_t s : pivots) b.at(s) = 1;
  return coweight_from_exponents(b);
}

namespace {

// Visits (pivot, position, free value) for the non-pivot positions below each pivot.
template <class F>
void for_each_free_entry(const Subspace& v, F&& f) {
  std::size_t idx = 0;
  std::size_t next_pivot = 0;
  for (std::size_t s : v.pivots) {
    for (std::size_t k = 0; k < s; ++k) {
      while (next_pivot < v.pivots.size() && v.pivots[next_pivot] < k) ++next_pivot;
      if (next_pivot < v.pivots.size() && v.pivots[next_pivot] == k) continue;
      f(s, k, v.free.at(idx++));
    }
    next_pivot = 0;
  }
}

}  // namespace

LaurentMatrix coset_representative(std::size_t n, int q, const Subspace& v) {
  LaurentMatrix r = LaurentMatrix::identity(n, q);
  for (std::size_t s : v.pivots) r(s, s) = LaurentPolynomial::monomial(q, 1, -1);
  for_each_free_entry(v, [&](std::size_t s, std::size_t k, std::uint8_t f) {
    if (f) r(k, s) = LaurentPolynomial::monomial(q, f, -1);
  });
  return r;
}

Vertex neighbor(const Vertex& x, const Subspace& v) {
  LaurentMatrix m = x.matrix();
  const LaurentMatrix& old = x.matrix();
  const std::size_t n = x.size();
  for_each_free_entry(v, [&](std::size_t s, std::size_t k, std::uint8_t f) {
    if (!f) return;
    for (std::size_t i = 0; i <= k; ++i)
      if (!old(i, k).is_zero()) m(i, s).add_multiple(old(i, k), f, 0);
  });
  for (std::size_t s : v.pivots) {
    if (s >= n) throw std::invalid_argument("pivot out of range");
    for (std::size_t i = 0; i <= s; ++i) m(i, s).shift(-1);
  }
  return Vertex::from_triangular(std::move(m));
}

std::vector<Vertex> neighbors(const Vertex& x, int i) {
  if (i < 1 || static_cast<std::size_t>(i) >= x.size())
    throw std::invalid_argument("neighbour type must be in 1.." + std::to_string(x.size() - 1));
  std::vector<Vertex> out;
  for (const Subspace& v : subspaces(x.size(), x.q(), static_cast<std::size_t>(i))) out.push_back(neighbor(x, v));
  return out;
}

std::vector<Vertex> all_neighbors(const Vertex& x) {
  std::vector<Vertex> out;
  for (std::size_t i = 1; i < x.size(); ++i) {
    auto part = neighbors(x, static_cast<int>(i));
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::int64_t sector_entry_level(const Vertex& x) {
  if (x.size() != 2) throw std::invalid_argument("sector_entry_level is implemented for rank 1 only");
  const Subspace toward{{0}, {}};
  Vertex cur = x;
  while (!cur.in_standard_apartment()) cur = neighbor(cur, toward);
  return cur.exponents()[0] - cur.exponents()[1];
}

std::int64_t sector_entry_level_direct(const Vertex& x) {
  if (x.size() != 2) throw std::invalid_argument("sector_entry_level is implemented for rank 1 only");
  const auto& a = x.exponents();
  const LaurentPolynomial& u = x.matrix()(0, 1);
  if (u.is_zero()) return a[0] - a[1];
  return -(u.valuation() + a[1]);
}

std::vector<Vertex> sphere(const Vertex& x, const LatticeVector& nu) {
  if (nu.rank() + 1 != x.size()) throw std::invalid_argument("nu has the wrong rank");
  if (!nu.is_integral() || !nu.is_dominant())
    throw std::invalid_argument("nu must be a dominant coweight, got " + to_string(nu));
  std::vector<int> steps;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < nu.rank(); ++i) {
    total += nu[i].numerator();
    if (total > kSphereGuard)
      throw std::invalid_argument("sphere guard exceeded: nu = " + to_string(nu) + " is a sum of more than " +
                                  std::to_string(kSphereGuard) + " fundamental coweights");
    for (std::int64_t c = 0; c < nu[i].numerator(); ++c) steps.push_back(static_cast<int>(i) + 1);
  }
  // Walk along the prefix sums of the decomposition; every vertex at vector
  // distance nu is reached through vertices at the intermediate distances.
  std::set<Vertex> level{x};
  LatticeVector prefix(nu.rank());
  for (int i : steps) {
    prefix[static_cast<std::size_t>(i - 1)] += 1;
    std::set<Vertex> next;
    for (const Vertex& y : level)
      for (Vertex& z : neighbors(y, i))
        if (!next.count(z) && vector_distance(x, z) == prefix) next.insert(std::move(z));
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

std::vector<Vertex> ball(const Vertex& x, int radius) {
  std::vector<Vertex> order{x};
  std::set<Vertex> seen{x};
  std::size_t begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t end = order.size();
    for (std::size_t k = begin; k < end; ++k)
      for (Vertex& y : all_neighbors(order[k]))
        if (seen.insert(y).second) order.push_back(std::move(y));
    begin = end;
  }
  return order;
}

}  // namespace weylwalk
