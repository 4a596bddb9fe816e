#include "weylwalk/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weylwalk {

// ---------------------------------------------------------------------------
// LatticeVector

LatticeVector LatticeVector::from_integers(std::span<const int> coords) {
  std::vector<Rational> out;
  out.reserve(coords.size());
  for (int c : coords) out.emplace_back(c);
  return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::unit(std::size_t rank, std::size_t i) {
  LatticeVector v(rank);
  v[i] = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.numerator() == 0; });
}

bool LatticeVector::is_dominant() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c >= 0; });
}

bool LatticeVector::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Rational& c) { return c.denominator() == 1; });
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
  if (other.rank() != rank()) throw std::invalid_argument("rank mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
  if (other.rank() != rank()) throw std::invalid_argument("rank mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator*=(const Rational& scale) {
  for (auto& c : coords_) c *= scale;
  return *this;
}

std::string to_string(const LatticeVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

LatticeVector IntMatrix::apply(const LatticeVector& x) const {
  LatticeVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (const int a = (*this)(i, j)) acc += a * x[j];
    }
    y[i] = acc;
  }
  return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (const int aik = a(i, k))
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
  return c;
}

std::string to_string(const WeylWord& w) {
  if (w.letters().empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.letters().size(); ++i) {
    if (i) out += ' ';
    out += 's' + std::to_string(w.letters()[i]);
  }
  return out;
}

RootKind parse_root_kind(std::string_view text) {
  if (text == "A" || text == "a") return RootKind::A;
  if (text == "C" || text == "c") return RootKind::C;
  throw std::invalid_argument("unsupported root system type '" + std::string(text) + "'");
}

char to_char(RootKind kind) { return kind == RootKind::A ? 'A' : 'C'; }

int Root::height() const {
  int h = 0;
  for (int c : coefficients) h += c;
  return h;
}

// ---------------------------------------------------------------------------
// RootSystem

namespace {

using Ambient = std::vector<Rational>;

Rational dot(const Ambient& a, const Ambient& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Ambient scaled(const Ambient& a, const Rational& s) {
  Ambient out(a);
  for (auto& c : out) c *= s;
  return out;
}

Ambient minus(const Ambient& a, const Ambient& b) {
  Ambient out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Ambient coroot_of(const Ambient& alpha) { return scaled(alpha, Rational(2) / dot(alpha, alpha)); }

// Gauss-Jordan inverse of a small rational matrix.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].numerator() == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].numerator() == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::string RootSystem::label() const { return std::string(1, to_char(kind_)) + std::to_string(rank_); }

Rational RootSystem::inner(const LatticeVector& x, const LatticeVector& y) const {
  Rational s(0);
  for (int i = 0; i < rank_; ++i) {
    if (x[i].numerator() == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (y[j].numerator() != 0) s += x[i] * gram_[i][j] * y[j];
    }
  }
  return s;
}

double RootSystem::norm(const LatticeVector& x) const { return std::sqrt(to_double(norm_squared(x))); }

double RootSystem::norm(std::span<const double> x) const {
  double s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += x[i] * to_double(gram_[i][j]) * x[j];
  return std::sqrt(std::max(0.0, s));
}

Rational RootSystem::pairing(const LatticeVector& x, const Root& root) const {
  Rational s(0);
  for (int i = 0; i < rank_; ++i) s += root.coefficients[i] * x[i];
  return s;
}

const WeylWord& RootSystem::element(const IntMatrix& matrix) const {
  const auto it = weyl_lookup_.find(matrix);
  if (it == weyl_lookup_.end()) throw std::invalid_argument("matrix is not an element of W0");
  return weyl_[it->second];
}

const WeylWord& RootSystem::element_of_word(std::span<const int> letters) const {
  IntMatrix m = IntMatrix::identity(static_cast<std::size_t>(rank_));
  for (int letter : letters) {
    if (letter < 1 || letter > rank_) throw std::invalid_argument("letter out of range");
    m = m * simple_reflections_[letter - 1];
  }
  return element(m);
}

int RootSystem::root_index(const LatticeVector& omega) const {
  const auto it = root_lookup_.find(omega);
  return it == root_lookup_.end() ? 0 : it->second;
}

bool RootSystem::in_coroot_lattice(const LatticeVector& x) const {
  // Coefficients b in the coroot basis solve sum_j b_j <alpha_j^vee, alpha_i> = x_i.
  for (int j = 0; j < rank_; ++j) {
    Rational b(0);
    for (int i = 0; i < rank_; ++i) b += coroot_basis_inverse_[j][i] * x[i];
    if (b.denominator() != 1) return false;
  }
  return true;
}

RootSystem build_root_system(RootKind kind, int rank) {
  if (kind == RootKind::A && (rank < 1 || rank > 6))
    throw std::invalid_argument("type A supports ranks 1..6, got " + std::to_string(rank));
  if (kind == RootKind::C && (rank < 2 || rank > 4))
    throw std::invalid_argument("type C supports ranks 2..4, got " + std::to_string(rank));

  RootSystem rs;
  rs.kind_ = kind;
  rs.rank_ = rank;
  const auto r = static_cast<std::size_t>(rank);

  if (kind == RootKind::A) {
    const std::size_t dim = r + 1;
    for (std::size_t i = 0; i < r; ++i) {
      Ambient alpha(dim, Rational(0));
      alpha[i] = 1;
      alpha[i + 1] = -1;
      rs.simple_ambient_.push_back(alpha);
      Ambient omega(dim, Rational(0));
      const Rational shift(static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(dim));
      for (std::size_t k = 0; k < dim; ++k) omega[k] = (k <= i ? Rational(1) : Rational(0)) - shift;
      rs.coweight_ambient_.push_back(omega);
    }
  } else {
    const std::size_t dim = r;
    for (std::size_t i = 0; i < r; ++i) {
      Ambient alpha(dim, Rational(0));
      if (i + 1 < r) {
        alpha[i] = 1;
        alpha[i + 1] = -1;
      } else {
        alpha[i] = 2;
      }
      rs.simple_ambient_.push_back(alpha);
      Ambient omega(dim, Rational(0));
      const Rational fill = (i + 1 < r) ? Rational(1) : Rational(1, 2);
      for (std::size_t k = 0; k <= i; ++k) omega[k] = fill;
      rs.coweight_ambient_.push_back(omega);
    }
  }

  for (const auto& alpha : rs.simple_ambient_) rs.coroot_ambient_.push_back(coroot_of(alpha));

  rs.cartan_.assign(r, std::vector<int>(r, 0));
  rs.gram_.assign(r, std::vector<Rational>(r, Rational(0)));
  std::vector<std::vector<Rational>> cartan_t(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const Rational c = dot(rs.coroot_ambient_[i], rs.simple_ambient_[j]);
      if (c.denominator() != 1) throw std::logic_error("non-integral Cartan entry");
      rs.cartan_[i][j] = static_cast<int>(c.numerator());
      cartan_t[j][i] = c;
      rs.gram_[i][j] = dot(rs.coweight_ambient_[i], rs.coweight_ambient_[j]);
    }
  }
  rs.coroot_basis_inverse_ = invert(cartan_t);

  // Close the simple roots under the simple reflections.
  std::set<Ambient> roots;
  std::deque<Ambient> queue;
  for (const auto& alpha : rs.simple_ambient_) {
    roots.insert(alpha);
    queue.push_back(alpha);
  }
  while (!queue.empty()) {
    const Ambient v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      Ambient w = minus(v, scaled(rs.simple_ambient_[i], dot(v, rs.coroot_ambient_[i])));
      if (roots.insert(w).second) queue.push_back(std::move(w));
    }
  }

  for (const auto& v : roots) {
    Root root;
    root.ambient = v;
    bool positive = true;
    for (std::size_t i = 0; i < r; ++i) {
      const Rational a = dot(v, rs.coweight_ambient_[i]);
      if (a.denominator() != 1) throw std::logic_error("non-integral root coefficient");
      root.coefficients.push_back(static_cast<int>(a.numerator()));
      if (a < 0) positive = false;
    }
    if (!positive) continue;
    std::vector<Rational> omega, coroot;
    const Ambient cv = coroot_of(v);
    for (std::size_t i = 0; i < r; ++i) {
      omega.push_back(dot(v, rs.simple_ambient_[i]));
      coroot.push_back(dot(cv, rs.simple_ambient_[i]));
    }
    root.omega = LatticeVector(std::move(omega));
    root.coroot = LatticeVector(std::move(coroot));
    rs.positive_.push_back(std::move(root));
  }
  std::sort(rs.positive_.begin(), rs.positive_.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coefficients > b.coefficients;
  });
  rs.simple_index_.assign(r, 0);
  for (std::size_t k = 0; k < rs.positive_.size(); ++k) {
    const Root& root = rs.positive_[k];
    rs.root_lookup_[root.omega] = static_cast<int>(k) + 1;
    rs.root_lookup_[-root.omega] = -(static_cast<int>(k) + 1);
    if (root.height() == 1) {
      for (std::size_t i = 0; i < r; ++i)
        if (root.coefficients[i] == 1) rs.simple_index_[i] = k;
    }
    if (root.height() > rs.positive_[rs.highest_].height()) rs.highest_ = k;
  }

  // Simple reflections on coweight coordinates: s_i(x) = x - x_i alpha_i^vee.
  for (std::size_t i = 0; i < r; ++i) {
    IntMatrix s = IntMatrix::identity(r);
    for (std::size_t j = 0; j < r; ++j) s(j, i) -= rs.cartan_[i][j];
    rs.simple_reflections_.push_back(s);
  }

  // Breadth-first enumeration; appending letters in increasing order to words
  // visited in shortlex order finds each element's lex-least reduced word.
  std::deque<std::size_t> frontier;
  rs.weyl_.emplace_back(std::vector<int>{}, IntMatrix::identity(r), IntMatrix::identity(r));
  rs.weyl_lookup_[rs.weyl_.front().matrix()] = 0;
  frontier.push_back(0);
  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      IntMatrix m = rs.weyl_[idx].matrix() * rs.simple_reflections_[i];
      if (rs.weyl_lookup_.count(m)) continue;
      IntMatrix inv = rs.simple_reflections_[i] * rs.weyl_[idx].inverse_matrix();
      std::vector<int> letters = rs.weyl_[idx].letters();
      letters.push_back(static_cast<int>(i) + 1);
      rs.weyl_lookup_[m] = rs.weyl_.size();
      frontier.push_back(rs.weyl_.size());
      rs.weyl_.emplace_back(std::move(letters), std::move(m), std::move(inv));
    }
  }
  rs.longest_ = rs.weyl_.size() - 1;
  return rs;
}

// ---------------------------------------------------------------------------
// Operations

LatticeVector reflect(const RootSystem& rs, const Wall& wall, const LatticeVector& x) {
  if (wall.root >= rs.positive_roots().size()) throw std::invalid_argument("wall root out of range");
  const Root& alpha = rs.positive_roots()[wall.root];
  const Rational offset = rs.pairing(x, alpha) - Rational(wall.level);
  return x - offset * alpha.coroot;
}

DominantDecomposition dominant_representative(const RootSystem& rs, const LatticeVector& mu) {
  for (const WeylWord& w : rs.weyl_group()) {
    LatticeVector candidate = w.apply_inverse(mu);
    if (candidate.is_dominant()) return {std::move(candidate), w};
  }
  throw std::logic_error("no dominant element in orbit");
}

std::vector<std::size_t> inversion_set(const RootSystem& rs, const WeylWord& w) {
  std::vector<std::size_t> out;
  const auto& roots = rs.positive_roots();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const int idx = rs.root_index(w.apply_inverse(roots[k].omega));
    if (idx == 0) throw std::logic_error("Weyl group does not preserve the root system");
    if (idx < 0) out.push_back(k);
  }
  return out;
}

SeparationConstant orbit_separation_constant(const RootSystem& rs, const LatticeVector& lambda) {
  if (lambda.is_zero()) throw std::domain_error("separation constant undefined at 0");
  std::set<LatticeVector> orbit;
  for (const WeylWord& w : rs.weyl_group()) orbit.insert(w.apply(lambda));
  if (orbit.size() < 2) throw std::domain_error("orbit is a single point");
  std::vector<LatticeVector> points(orbit.begin(), orbit.end());
  Rational best(-1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Rational d2 = rs.norm_squared(points[i] - points[j]);
      if (best < 0 || d2 < best) best = d2;
    }
  }
  SeparationConstant c;
  c.squared = best / rs.norm_squared(lambda);
  c.value = std::sqrt(to_double(c.squared));
  return c;
}

bool cat0_comparison_holds(const RootSystem& rs, const LatticeVector& o, const LatticeVector& a,
                           const LatticeVector& b, const Rational& t1, const Rational& t2) {
  const LatticeVector p = o + t1 * (a - o);
  const LatticeVector q = o + t2 * (b - o);
  const Rational lhs = rs.norm_squared(p - q);
  const Rational rhs = t1 * (t1 - t2) * rs.norm_squared(a - o) +
                       t2 * (t2 - t1) * rs.norm_squared(b - o) + t1 * t2 * rs.norm_squared(a - b);
  return lhs <= rhs;
}

LatticeVector vector_distance_apartment(const RootSystem& rs, const LatticeVector& x,
                                        const LatticeVector& y) {
  return dominant_representative(rs, y - x).dominant;
}

int vertex_type(const RootSystem& rs, const LatticeVector& lambda) {
  if (static_cast<int>(lambda.rank()) != rs.rank()) throw std::invalid_argument("rank mismatch");
  if (!rs.in_coweight_lattice(lambda))
    throw std::invalid_argument("vertex_type: " + to_string(lambda) + " is not in P");
  const int r = rs.rank();
  if (rs.kind() == RootKind::A) {
    std::int64_t s = 0;
    for (int i = 0; i < r; ++i) s += (i + 1) * lambda[i].numerator();
    const std::int64_t m = r + 1;
    return static_cast<int>(((s % m) + m) % m);
  }
  return rs.in_coroot_lattice(lambda) ? 0 : r;
}

Sector::Sector(const RootSystem& rs, LatticeVector base, WeylWord direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  if (!rs.in_coweight_lattice(base_)) throw std::invalid_argument("sector base must be a special vertex");
}

bool Sector::contains(const LatticeVector& x) const {
  return direction_.apply_inverse(x - base_).is_dominant();
}

}  // namespace weylwalk
