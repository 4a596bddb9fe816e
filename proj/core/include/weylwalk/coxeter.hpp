#pragma once

// Finite and affine Weyl group arithmetic in the Euclidean model E.
//
// Every vector of E is stored in the basis of fundamental coweights, so the
// coordinate i of a vector x is the pairing <x, alpha_i> with the i-th simple
// root. The ambient inner product is carried by the coweight Gram matrix of
// the root system. All arithmetic is exact.

#include "weylwalk/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weylwalk {

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : coords_(rank, Rational(0)) {}
  explicit LatticeVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<Rational> coords) : coords_(coords) {}

  static LatticeVector from_integers(std::span<const int> coords);
  static LatticeVector unit(std::size_t rank, std::size_t i);

  std::size_t rank() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  // Dominant iff every coordinate <x, alpha_i> is nonnegative.
  bool is_dominant() const;
  // True iff every coordinate is an integer, i.e. the vector lies in P.
  bool is_integral() const;

  LatticeVector& operator+=(const LatticeVector& other);
  LatticeVector& operator-=(const LatticeVector& other);
  LatticeVector& operator*=(const Rational& scale);

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Rational& s, LatticeVector a) { return a *= s; }
  friend LatticeVector operator-(LatticeVector a) { return a *= Rational(-1); }
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ < b.coords_;
  }

 private:
  std::vector<Rational> coords_;
};

std::string to_string(const LatticeVector& v);

// Square integer matrix acting on coweight coordinates.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  static IntMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  int& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  LatticeVector apply(const LatticeVector& x) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend bool operator<(const IntMatrix& a, const IntMatrix& b) { return a.a_ < b.a_; }

 private:
  std::size_t n_ = 0;
  std::vector<int> a_;
};

// Element of W0 as a word in the simple reflections s_1..s_r (1-based
// letters) together with its matrix. The word s_{i1} ... s_{ik} acts on E by
// the product S_{i1} ... S_{ik}.
class WeylWord {
 public:
  WeylWord() = default;
  WeylWord(std::vector<int> letters, IntMatrix matrix, IntMatrix inverse)
      : letters_(std::move(letters)), matrix_(std::move(matrix)), inverse_(std::move(inverse)) {}

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  const IntMatrix& matrix() const { return matrix_; }
  const IntMatrix& inverse_matrix() const { return inverse_; }

  LatticeVector apply(const LatticeVector& x) const { return matrix_.apply(x); }
  LatticeVector apply_inverse(const LatticeVector& x) const { return inverse_.apply(x); }

 private:
  std::vector<int> letters_;
  IntMatrix matrix_;
  IntMatrix inverse_;
};

// "e" for the identity, otherwise "s1 s2 s1".
std::string to_string(const WeylWord& w);

enum class RootKind { A, C };

RootKind parse_root_kind(std::string_view text);
char to_char(RootKind kind);

struct Root {
  std::vector<int> coefficients;  // in the simple-root basis
  LatticeVector omega;            // <alpha, alpha_i> for each i
  LatticeVector coroot;           // alpha^vee in coweight coordinates
  std::vector<Rational> ambient;  // standard Euclidean coordinates

  int height() const;
};

class RootSystem {
 public:
  RootKind kind() const { return kind_; }
  int rank() const { return rank_; }
  std::string label() const;

  const std::vector<std::vector<Rational>>& simple_roots_ambient() const { return simple_ambient_; }
  const std::vector<std::vector<Rational>>& simple_coroots_ambient() const { return coroot_ambient_; }
  const std::vector<std::vector<Rational>>& fundamental_coweights_ambient() const {
    return coweight_ambient_;
  }

  const std::vector<Root>& positive_roots() const { return positive_; }
  const Root& highest_root() const { return positive_[highest_]; }
  // Cartan integers <alpha_i^vee, alpha_j>.
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<std::vector<Rational>>& coweight_gram() const { return gram_; }

  LatticeVector fundamental_coweight(std::size_t i) const {
    return LatticeVector::unit(static_cast<std::size_t>(rank_), i);
  }
  const Root& simple_root(std::size_t i) const { return positive_[simple_index_[i]]; }

  Rational inner(const LatticeVector& x, const LatticeVector& y) const;
  Rational norm_squared(const LatticeVector& x) const { return inner(x, x); }
  double norm(const LatticeVector& x) const;
  // Euclidean norm for floating-point coordinates in the coweight basis.
  double norm(std::span<const double> x) const;
  Rational pairing(const LatticeVector& x, const Root& root) const;

  // W0 in shortlex order of lexicographically least reduced words.
  const std::vector<WeylWord>& weyl_group() const { return weyl_; }
  const WeylWord& identity() const { return weyl_.front(); }
  const WeylWord& longest_element() const { return weyl_[longest_]; }
  // Lookup of an element by matrix; throws if the matrix is not in W0.
  const WeylWord& element(const IntMatrix& matrix) const;
  // Evaluates an arbitrary (not necessarily reduced) word.
  const WeylWord& element_of_word(std::span<const int> letters) const;

  // Signed index into positive_roots(): +k+1 for the k-th positive root,
  // -(k+1) for its negative, 0 when the vector is not a root.
  int root_index(const LatticeVector& omega) const;

  bool in_coweight_lattice(const LatticeVector& x) const { return x.is_integral(); }
  bool in_coroot_lattice(const LatticeVector& x) const;

  friend RootSystem build_root_system(RootKind kind, int rank);

 private:
  RootKind kind_ = RootKind::A;
  int rank_ = 0;
  std::vector<std::vector<Rational>> simple_ambient_;
  std::vector<std::vector<Rational>> coroot_ambient_;
  std::vector<std::vector<Rational>> coweight_ambient_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Rational>> gram_;
  std::vector<std::vector<Rational>> coroot_basis_inverse_;
  std::vector<Root> positive_;
  std::vector<std::size_t> simple_index_;
  std::size_t highest_ = 0;
  std::map<LatticeVector, int> root_lookup_;
  std::vector<WeylWord> weyl_;
  std::map<IntMatrix, std::size_t> weyl_lookup_;
  std::size_t longest_ = 0;
  std::vector<IntMatrix> simple_reflections_;
};

// Supported: A_r for 1 <= r <= 6, C_r for 2 <= r <= 4.
RootSystem build_root_system(RootKind kind, int rank);

// H_{alpha,k} = {x : <x, alpha> = k} for a positive root alpha.
struct Wall {
  std::size_t root = 0;  // index into RootSystem::positive_roots()
  std::int64_t level = 0;
};

// s_{alpha,k}(x) = x - (<x, alpha> - k) alpha^vee.
LatticeVector reflect(const RootSystem& rs, const Wall& wall, const LatticeVector& x);

struct DominantDecomposition {
  LatticeVector dominant;  // mu^+
  WeylWord word;           // w with w(mu^+) = mu, minimal length, lex-least
};

DominantDecomposition dominant_representative(const RootSystem& rs, const LatticeVector& mu);

// {alpha in R+ : w^{-1} alpha in -R+}, as sorted indices into positive_roots().
std::vector<std::size_t> inversion_set(const RootSystem& rs, const WeylWord& w);

struct SeparationConstant {
  Rational squared;  // C^2, exact
  double value = 0;  // C
};

// C = min{ d(w1 l, w2 l) : w1 l != w2 l } / |l|. Throws std::domain_error at 0.
SeparationConstant orbit_separation_constant(const RootSystem& rs, const LatticeVector& lambda);

// CAT(0) comparison for the geodesic interpolants p(t1) on [o,a] and q(t2) on
// [o,b], evaluated exactly in the flat model.
bool cat0_comparison_holds(const RootSystem& rs, const LatticeVector& o, const LatticeVector& a,
                           const LatticeVector& b, const Rational& t1, const Rational& t2);

// (y - x)^+.
LatticeVector vector_distance_apartment(const RootSystem& rs, const LatticeVector& x,
                                        const LatticeVector& y);

// Vertex type of a special vertex. Type A_r uses the cyclic labelling
// lambda -> sum_i i * <lambda, alpha_i> mod (r+1); type C_r sends Q to 0 and
// P \ Q to r. Throws std::invalid_argument when lambda is not in P.
int vertex_type(const RootSystem& rs, const LatticeVector& lambda);

// base + w s0. The base must be a special vertex.
class Sector {
 public:
  Sector(const RootSystem& rs, LatticeVector base, WeylWord direction);

  const LatticeVector& base() const { return base_; }
  const WeylWord& direction() const { return direction_; }
  bool contains(const LatticeVector& x) const;

 private:
  LatticeVector base_;
  WeylWord direction_;
};

}  // namespace weylwalk
