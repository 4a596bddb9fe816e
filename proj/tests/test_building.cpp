#include "support.hpp"

#include <weylwalk/building.hpp>
#include <weylwalk/padic.hpp>
#include <weylwalk/rng.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

using namespace weylwalk;

namespace {

LatticeVector ints(std::initializer_list<int> c) {
  std::vector<int> v(c);
  return LatticeVector::from_integers(v);
}

LaurentPolynomial random_laurent(CounterRng& rng, int q, int low, int high) {
  std::vector<std::uint8_t> c(static_cast<std::size_t>(high - low + 1));
  for (auto& x : c) x = static_cast<std::uint8_t>(rng.uniform_below(static_cast<std::uint64_t>(q)));
  return LaurentPolynomial(q, low, c);
}

LaurentMatrix random_invertible(CounterRng& rng, std::size_t n, int q) {
  for (;;) {
    LaurentMatrix g(n, q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = random_laurent(rng, q, -2, 2);
    if (!determinant(g).is_zero()) return g;
  }
}

Vertex random_walk_vertex(CounterRng& rng, const BuildingParams& p, int steps) {
  Vertex x = Vertex::base(p);
  for (int s = 0; s < steps; ++s) {
    const auto nbrs = all_neighbors(x);
    x = nbrs[rng.uniform_below(nbrs.size())];
  }
  return x;
}

// Breadth-first depths in the vertex graph, computed only from all_neighbors.
std::unordered_map<Vertex, int, VertexHash> bfs_depths(const Vertex& root, int radius) {
  std::unordered_map<Vertex, int, VertexHash> depth{{root, 0}};
  std::vector<Vertex> frontier{root};
  for (int d = 1; d <= radius; ++d) {
    std::vector<Vertex> next;
    for (const auto& x : frontier)
      for (auto& y : all_neighbors(x))
        if (depth.emplace(y, d).second) next.push_back(std::move(y));
    frontier = std::move(next);
  }
  return depth;
}

int coordinate_sum(const LatticeVector& v) {
  Rational s(0);
  for (const auto& c : v.coords()) s += c;
  return static_cast<int>(s.numerator());
}

}  // namespace

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS((BuildingParams{0, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BuildingParams{7, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BuildingParams{1, 4}.validate()), std::invalid_argument);
  CHECK_NOTHROW((BuildingParams{2, 3}.validate()));
}

TEST_CASE("translation vertex of omega_1 in PGL2") {
  const Vertex v = translation_vertex(2, ints({1}));
  const LaurentMatrix expected = translation_laurent(2, std::vector<std::int64_t>{1, 0});
  CHECK(v.matrix() == expected);
  CHECK(v.in_standard_apartment());
  CHECK(busemann(v) == ints({1}));
  CHECK(distance_from_base(v) == ints({1}));
  // Homothety: t_(2,1) o is the same vertex.
  CHECK(translation_vertex(2, std::vector<std::int64_t>{2, 1}) == v);
}

TEST_CASE("neighbour counts are Gaussian binomials") {
  const Vertex o3 = Vertex::base({2, 2});
  CHECK(neighbors(o3, 1).size() == 7);
  CHECK(neighbors(o3, 2).size() == 7);
  CHECK(all_neighbors(o3).size() == 14);
  CHECK(all_neighbors(Vertex::base({1, 3})).size() == 4);
  CHECK(neighbors(Vertex::base({3, 2}), 2).size() == 35);
  CHECK(subspaces(4, 2, 2).size() == 35);
  std::size_t total = 0;
  for (const auto& piv : pivot_sets(4, 2)) total += std::size_t{1} << schubert_dimension(4, piv);
  CHECK(total == 35);
}

TEST_CASE("neighbours sit at fundamental vector distance with shifted type") {
  CounterRng rng(3);
  for (int rank : {1, 2, 3}) {
    const BuildingParams p{rank, 2};
    for (int trial = 0; trial < 6; ++trial) {
      const Vertex x = random_walk_vertex(rng, p, 4);
      for (int i = 1; i <= rank; ++i)
        for (const auto& y : neighbors(x, i)) {
          CHECK(vector_distance(x, y) == LatticeVector::unit(static_cast<std::size_t>(rank), static_cast<std::size_t>(i - 1)));
          CHECK(y.type() == (x.type() + i) % (rank + 1));
        }
    }
  }
}

TEST_CASE("truncated canonical form agrees with exact column reduction") {
  CounterRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const int q = trial % 3 == 0 ? 3 : 2;
    const LaurentMatrix g = random_invertible(rng, n, q);
    const Vertex fast = canonicalize(g);
    const Vertex exact = canonicalize(to_rational(g));
    CHECK(fast == exact);
    // Same homothety class: g^-1 M is a scalar times an element of GL_n(o).
    const auto inv = smith_valuations(inverse(to_rational(g)) * to_rational(fast.matrix()));
    CHECK(std::all_of(inv.begin(), inv.end(), [&](std::int64_t v) { return v == inv.front(); }));
    CHECK(canonicalize(fast.matrix()) == fast);
  }
}

TEST_CASE("vector distance is the Cartan invariant of x^-1 y") {
  CounterRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const BuildingParams p{1 + trial % 2, 2};
    const Vertex x = random_walk_vertex(rng, p, 3);
    const Vertex y = random_walk_vertex(rng, p, 3);
    const auto lambda = smith_valuations(to_rational(inverse_matrix(x)) * to_rational(y.matrix()));
    CHECK(vector_distance(x, y) == coweight_from_exponents(lambda));
    // d(y, x) = -w0 d(x, y): coordinates reversed in type A.
    std::vector<Rational> c = vector_distance(x, y).coords();
    std::reverse(c.begin(), c.end());
    CHECK(vector_distance(y, x) == LatticeVector(c));
    CHECK(distance_from_base(y) == vector_distance(Vertex::base(p), y));
  }
}

TEST_CASE("vector distance agrees with breadth-first distance in PGL3(F2)") {
  const Vertex o = Vertex::base({2, 2});
  const auto depth = bfs_depths(o, 2);
  std::map<LatticeVector, std::size_t> by_distance;
  for (const auto& [x, d] : depth) {
    const LatticeVector v = distance_from_base(x);
    CHECK(coordinate_sum(v) == d);
    ++by_distance[v];
  }
  for (const auto& nu : {ints({1, 0}), ints({0, 1}), ints({2, 0}), ints({1, 1}), ints({0, 2})}) {
    CAPTURE(nu);
    const auto s = sphere(o, nu);
    CHECK(s.size() == by_distance[nu]);
    for (const auto& y : s) {
      REQUIRE(depth.count(y) == 1);
      CHECK(distance_from_base(y) == nu);
    }
  }
  CHECK(by_distance[ints({1, 0})] == 7);
  CHECK(by_distance[ints({2, 0})] == 28);
  CHECK(by_distance[ints({1, 1})] == 42);
}

TEST_CASE("vector distance of a type-1 neighbour of a type-2 neighbour") {
  const Vertex o = Vertex::base({2, 2});
  const auto depth = bfs_depths(o, 2);
  for (const auto& y : neighbors(o, 2))
    for (const auto& x : neighbors(y, 1)) {
      const LatticeVector v = distance_from_base(x);
      const bool allowed = v.is_zero() || v == ints({1, 1});
      CHECK(allowed);
      CHECK(coordinate_sum(v) == depth.at(x));
    }
}

TEST_CASE("tree spheres") {
  for (int q : {2, 3}) {
    const Vertex o = Vertex::base({1, q});
    for (int k = 1; k <= 4; ++k) {
      std::size_t expected = static_cast<std::size_t>(q + 1);
      for (int j = 1; j < k; ++j) expected *= static_cast<std::size_t>(q);
      CHECK(sphere(o, ints({k})).size() == expected);
    }
  }
  CHECK(sphere(Vertex::base({1, 2}), ints({2})).size() == 6);
  CHECK(sphere(Vertex::base({2, 2}), ints({1, 0})).size() == 7);
  CHECK_THROWS_AS(sphere(Vertex::base({1, 2}), ints({5})), std::invalid_argument);
  CHECK_THROWS_AS(sphere(Vertex::base({2, 2}), ints({-1, 0})), std::invalid_argument);
}

TEST_CASE("ball sizes") {
  CHECK(ball(Vertex::base({1, 2}), 3).size() == 1 + 3 + 6 + 12);
  CHECK(ball(Vertex::base({2, 2}), 1).size() == 15);
  CHECK(ball(Vertex::base({2, 2}), 2).size() == bfs_depths(Vertex::base({2, 2}), 2).size());
}

TEST_CASE("Busemann values of apartment vertices and along sectors") {
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int a = static_cast<int>(rng.uniform_below(9)) - 4;
    const int b = static_cast<int>(rng.uniform_below(9)) - 4;
    CHECK(busemann(translation_vertex(2, ints({a, b}))) == ints({a, b}));
  }
  // h(x) = lambda - d(x, t_lambda o) for lambda deep in the dominant chamber.
  for (int trial = 0; trial < 40; ++trial) {
    const Vertex x = random_walk_vertex(rng, {2, 2}, 4);
    for (int m = 5; m <= 8; ++m) {
      const LatticeVector lambda = ints({m, m});
      CHECK(lambda - vector_distance(x, translation_vertex(2, lambda)) == busemann(x));
    }
  }
}

TEST_CASE("sector entry level: closed form against the iterative ray") {
  const Vertex o = Vertex::base({1, 2});
  for (const auto& y : all_neighbors(o))
    if (!y.in_standard_apartment()) CHECK(sector_entry_level(y) == 0);
  for (int q : {2, 3}) {
    for (const auto& x : ball(Vertex::base({1, q}), 5)) {
      CHECK(sector_entry_level_direct(x) == sector_entry_level(x));
      CHECK(busemann(x)[0] <= Rational(sector_entry_level(x)));
      if (x.in_standard_apartment()) CHECK(busemann(x)[0] == Rational(sector_entry_level(x)));
    }
  }
  CHECK_THROWS_AS(sector_entry_level(Vertex::base({2, 2})), std::invalid_argument);
}

TEST_CASE("coset representatives realise the subspace") {
  for (const auto& v : subspaces(3, 2, 1)) {
    const LaurentMatrix r = coset_representative(3, 2, v);
    CHECK(determinant(r).valuation() == -1);
    CHECK(canonicalize(r) == neighbor(Vertex::base({2, 2}), v));
    CHECK(pivot_offset(3, v.pivots) == busemann(canonicalize(r)));
  }
}

TEST_CASE("vertex type of t_lambda o matches the coweight labelling") {
  for (int rank : {1, 2, 3}) {
    const RootSystem rs = build_root_system(RootKind::A, rank);
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        std::vector<int> c(static_cast<std::size_t>(rank), 0);
        c[0] = a;
        if (rank > 1) c[1] = b;
        if (rank > 2) c[2] = a - b;
        const LatticeVector lambda = LatticeVector::from_integers(c);
        CHECK(translation_vertex(2, lambda).type() == vertex_type(rs, lambda));
      }
  }
}
