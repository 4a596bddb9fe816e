#pragma once

// The affine building of PGL_n(F_q((t))), n = r + 1, of type A~_r.
//
// A vertex is the homothety class of the lattice M o^n. Its canonical
// representative is the reduced upper-triangular column Hermite form
//   M = u t_a,  diag(M) = (t^-a_1, ..., t^-a_n),
// with every entry above the diagonal in row i using only exponents < -a_i,
// scaled by a power of t so that a_1 + ... + a_n lies in {0, ..., r}. In this
// form the Iwasawa coordinate of the vertex is a itself.

#include "weylwalk/coxeter.hpp"
#include "weylwalk/matrix.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace weylwalk {

struct BuildingParams {
  int rank = 1;
  int q = 2;

  std::size_t n() const { return static_cast<std::size_t>(rank) + 1; }
  // Throws std::invalid_argument unless 1 <= rank <= 6 and q is a supported prime.
  void validate() const;
};

class Vertex {
 public:
  Vertex() = default;
  static Vertex base(const BuildingParams& params);
  // m must be upper triangular with monomial diagonal; reduces and normalizes.
  static Vertex from_triangular(LaurentMatrix m);

  std::size_t size() const { return a_.size(); }
  int q() const { return m_.q(); }
  const LaurentMatrix& matrix() const { return m_; }
  // The diagonal of the canonical form is t^-a_i.
  const std::vector<std::int64_t>& exponents() const { return a_; }
  // (a_1 + ... + a_n) mod n, equal to -v(det) mod n.
  int type() const;
  // True iff the canonical form is diagonal, i.e. the vertex is t_a o.
  bool in_standard_apartment() const;

  friend bool operator==(const Vertex& x, const Vertex& y) { return x.a_ == y.a_ && x.m_ == y.m_; }
  friend bool operator<(const Vertex& x, const Vertex& y);

 private:
  void reduce();

  LaurentMatrix m_;
  std::vector<std::int64_t> a_;
};

std::string to_string(const Vertex& v);

struct VertexHash {
  std::size_t operator()(const Vertex& v) const;
};

// Exact canonical form of M o^n over F_q(t).
Vertex canonicalize(const RationalFunctionMatrix& m);
// Canonical form of G o^n for a Laurent matrix. Works in F^n / t^P o^n with
// P = v(det G) - (n-1) * (minimal entry valuation), which bounds the largest
// elementary divisor, so only polynomial arithmetic is needed.
Vertex canonicalize(const LaurentMatrix& g, std::int64_t det_valuation);
Vertex canonicalize(const LaurentMatrix& g);

// The standard-apartment vertex t_mu o for mu in Z^n.
Vertex translation_vertex(int q, std::span<const std::int64_t> mu);
// t_mu o for mu given in coweight coordinates (rank r), with mu_n = 0.
Vertex translation_vertex(int q, const LatticeVector& mu);

// Exact inverse of the canonical matrix of v.
LaurentMatrix inverse_matrix(const Vertex& v);

// Converts a sorted exponent vector (lambda_1 >= ... >= lambda_n) to the
// dominant coweight with coordinates lambda_i - lambda_{i+1}.
LatticeVector coweight_from_exponents(std::span<const std::int64_t> lambda);

LatticeVector vector_distance(const Vertex& x, const Vertex& y);
// d(o, x); cheaper than vector_distance(base, x).
LatticeVector distance_from_base(const Vertex& x);
// Iwasawa coordinate of x in coweight coordinates: a_i - a_{i+1}.
LatticeVector busemann(const Vertex& x);

// An i-dimensional subspace V of F_q^n in reduced echelon form read from the
// bottom: basis vector s (for s in pivots) has a 1 in position s, zeros at the
// other pivots and free entries at the non-pivot positions k < s.
struct Subspace {
  std::vector<std::size_t> pivots;
  // Free entries, ordered by pivot and then by position.
  std::vector<std::uint8_t> free;
};

// Number of free entries of a pivot set: sum over s of #{k < s : k not a pivot}.
std::size_t schubert_dimension(std::size_t n, const std::vector<std::size_t>& pivots);
// All i-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> pivot_sets(std::size_t n, std::size_t i);
std::vector<Subspace> subspaces(std::size_t n, int q, std::size_t i);
// Coweight coordinates of the indicator vector of the pivots.
LatticeVector pivot_offset(std::size_t n, const std::vector<std::size_t>& pivots);

// R_V = u_V t_b with b the indicator of the pivots; R_V o is the lattice
// between o^n and t^-1 o^n whose image in t^-1 o^n / o^n is V.
LaurentMatrix coset_representative(std::size_t n, int q, const Subspace& v);

// The vertex x R_V o, adjacent to x at vector distance omega_i, i = |V|.
Vertex neighbor(const Vertex& x, const Subspace& v);
std::vector<Vertex> neighbors(const Vertex& x, int i);
std::vector<Vertex> all_neighbors(const Vertex& x);

// Rank 1 only: follows the neighbour toward the dominant end until the
// standard apartment is reached and returns the Busemann value there.
std::int64_t sector_entry_level(const Vertex& x);
// Same value read off the canonical form: with off-diagonal entry u != 0 of
// lowest exponent e, the toward-end ray enters the apartment at level -e - a_2.
std::int64_t sector_entry_level_direct(const Vertex& x);

inline constexpr int kSphereGuard = 4;

// {y : d(x, y) = nu}, for nu a sum of at most kSphereGuard fundamental
// coweights. Throws std::invalid_argument otherwise.
std::vector<Vertex> sphere(const Vertex& x, const LatticeVector& nu);
// Vertices within graph distance `radius` of x, in breadth-first order.
std::vector<Vertex> ball(const Vertex& x, int radius);

}  // namespace weylwalk
