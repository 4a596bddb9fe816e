#include "support.hpp"

#include <weylwalk/coxeter.hpp>
#include <weylwalk/rng.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

using namespace weylwalk;

namespace {

LatticeVector ints(std::initializer_list<int> c) {
  std::vector<int> v(c);
  return LatticeVector::from_integers(v);
}

// S_i x = x - <x, alpha_i> alpha_i^vee, written out from the Cartan integers.
IntMatrix reflection_from_cartan(const RootSystem& rs, std::size_t i) {
  const std::size_t r = static_cast<std::size_t>(rs.rank());
  IntMatrix m = IntMatrix::identity(r);
  for (std::size_t j = 0; j < r; ++j) m(j, i) -= rs.cartan_matrix()[i][j];
  return m;
}

std::set<IntMatrix> close_under_products(const RootSystem& rs) {
  std::vector<IntMatrix> gens;
  for (int i = 0; i < rs.rank(); ++i) gens.push_back(reflection_from_cartan(rs, static_cast<std::size_t>(i)));
  std::set<IntMatrix> seen{IntMatrix::identity(static_cast<std::size_t>(rs.rank()))};
  std::vector<IntMatrix> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<IntMatrix> next;
    for (const auto& m : frontier)
      for (const auto& g : gens) {
        IntMatrix p = m * g;
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return seen;
}

Rational random_rational(CounterRng& rng, int span, int den) {
  const auto d = static_cast<std::int64_t>(1 + rng.uniform_below(static_cast<std::uint64_t>(den)));
  const auto n = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(2 * span * d + 1))) - span * d;
  return Rational(n, d);
}

LatticeVector random_vector(CounterRng& rng, int rank) {
  LatticeVector v(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) v[static_cast<std::size_t>(i)] = random_rational(rng, 3, 4);
  return v;
}

}  // namespace

TEST_CASE("C2 root datum matches the standard picture") {
  const RootSystem rs = build_root_system(RootKind::C, 2);
  using V = std::vector<Rational>;
  CHECK(rs.simple_roots_ambient()[0] == V{Rational(1), Rational(-1)});
  CHECK(rs.simple_roots_ambient()[1] == V{Rational(0), Rational(2)});
  CHECK(rs.simple_coroots_ambient()[0] == V{Rational(1), Rational(-1)});
  CHECK(rs.simple_coroots_ambient()[1] == V{Rational(0), Rational(1)});
  CHECK(rs.fundamental_coweights_ambient()[0] == V{Rational(1), Rational(0)});
  CHECK(rs.fundamental_coweights_ambient()[1] == V{Rational(1, 2), Rational(1, 2)});
  CHECK(rs.highest_root().coefficients == std::vector<int>{2, 1});
  CHECK(rs.highest_root().ambient == V{Rational(2), Rational(0)});
  CHECK(rs.positive_roots().size() == 4);
}

TEST_CASE("A2 positive roots and Weyl group") {
  const RootSystem rs = build_root_system(RootKind::A, 2);
  CHECK(rs.positive_roots().size() == 3);
  CHECK(rs.highest_root().coefficients == std::vector<int>{1, 1});
  CHECK(rs.weyl_group().size() == 6);
  CHECK(rs.longest_element().length() == 3);
}

TEST_CASE("Weyl groups agree with the closure of the simple reflections") {
  const std::vector<std::pair<RootKind, int>> types = {
      {RootKind::A, 1}, {RootKind::A, 2}, {RootKind::A, 3}, {RootKind::A, 4}, {RootKind::C, 2}, {RootKind::C, 3}};
  for (auto [kind, rank] : types) {
    CAPTURE(rank);
    const RootSystem rs = build_root_system(kind, rank);
    const auto closure = close_under_products(rs);
    std::set<IntMatrix> listed;
    for (const auto& w : rs.weyl_group()) {
      listed.insert(w.matrix());
      CHECK(w.matrix() * w.inverse_matrix() == IntMatrix::identity(static_cast<std::size_t>(rank)));
    }
    CHECK(listed == closure);
    CHECK(listed.size() == rs.weyl_group().size());
    const std::size_t r = static_cast<std::size_t>(rank);
    const std::size_t expected_roots = kind == RootKind::A ? r * (r + 1) / 2 : r * r;
    CHECK(rs.positive_roots().size() == expected_roots);
    // Shortlex: lengths never decrease and the longest element inverts every positive root.
    for (std::size_t k = 1; k < rs.weyl_group().size(); ++k)
      CHECK(rs.weyl_group()[k - 1].length() <= rs.weyl_group()[k].length());
    CHECK(inversion_set(rs, rs.longest_element()).size() == rs.positive_roots().size());
    CHECK(inversion_set(rs, rs.identity()).empty());
    for (const auto& w : rs.weyl_group()) CHECK(inversion_set(rs, w).size() == w.length());
  }
}

TEST_CASE("unsupported root systems are rejected") {
  CHECK_THROWS_AS(build_root_system(RootKind::A, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootKind::A, 7), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system(RootKind::C, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_root_kind("E"), std::invalid_argument);
}

TEST_CASE("coroot of alpha_1 in C2") {
  const RootSystem rs = build_root_system(RootKind::C, 2);
  const Root& a1 = rs.simple_root(0);
  CHECK(a1.coroot == LatticeVector{Rational(2), Rational(-2)});
  // x = 0 is fixed by the linear reflection and sent to alpha^vee by the level-1 one.
  const LatticeVector zero(2);
  CHECK(reflect(rs, Wall{0, 0}, zero) == zero);
  CHECK(reflect(rs, Wall{0, 1}, zero) == a1.coroot);
}

TEST_CASE("affine reflections are involutions fixing their wall") {
  CounterRng rng(7);
  for (auto [kind, rank] : {std::pair{RootKind::A, 2}, std::pair{RootKind::C, 2}, std::pair{RootKind::A, 3}}) {
    const RootSystem rs = build_root_system(kind, rank);
    for (int trial = 0; trial < 200; ++trial) {
      const LatticeVector x = random_vector(rng, rank);
      const Wall wall{rng.uniform_below(rs.positive_roots().size()),
                      static_cast<std::int64_t>(rng.uniform_below(7)) - 3};
      const LatticeVector y = reflect(rs, wall, x);
      CHECK(reflect(rs, wall, y) == x);
      const Root& root = rs.positive_roots()[wall.root];
      CHECK(rs.pairing(x, root) + rs.pairing(y, root) == Rational(2 * wall.level));
      CHECK(y - x == (Rational(wall.level) - rs.pairing(x, root)) * root.coroot);
    }
  }
}

TEST_CASE("dominant representatives against brute force") {
  CounterRng rng(11);
  for (auto [kind, rank] : {std::pair{RootKind::A, 2}, std::pair{RootKind::C, 2}, std::pair{RootKind::A, 3}}) {
    const RootSystem rs = build_root_system(kind, rank);
    for (int trial = 0; trial < 200; ++trial) {
      const LatticeVector mu = random_vector(rng, rank);
      const auto d = dominant_representative(rs, mu);
      CHECK(d.dominant.is_dominant());
      CHECK(d.word.apply(d.dominant) == mu);
      std::size_t best = SIZE_MAX;
      for (const auto& w : rs.weyl_group()) {
        if (w.apply(mu).is_dominant()) CHECK(w.apply(mu) == d.dominant);
        if (w.apply(d.dominant) == mu) best = std::min(best, w.length());
      }
      CHECK(d.word.length() == best);
    }
  }
}

TEST_CASE("C2 minus omega_1 folds to omega_1 by a word of length 3") {
  const RootSystem rs = build_root_system(RootKind::C, 2);
  const auto d = dominant_representative(rs, ints({-1, 0}));
  CHECK(d.dominant == ints({1, 0}));
  CHECK(d.word.length() == 3);
  // Both elements sending omega_1 to its negative: the longest element and one of length 3.
  std::vector<std::size_t> lengths;
  for (const auto& w : rs.weyl_group())
    if (w.apply(ints({1, 0})) == ints({-1, 0})) lengths.push_back(w.length());
  std::sort(lengths.begin(), lengths.end());
  CHECK(lengths == std::vector<std::size_t>{3, 4});
}

TEST_CASE("orbit separation constant") {
  const RootSystem c2 = build_root_system(RootKind::C, 2);
  // Orbit of e_1 is {+-e_1, +-e_2}; closest distinct pair at distance sqrt 2.
  const auto c = orbit_separation_constant(c2, ints({1, 0}));
  CHECK(c.squared == Rational(2));
  CHECK(c.value == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(orbit_separation_constant(c2, LatticeVector(2)), std::domain_error);

  CounterRng rng(3);
  for (auto [kind, rank] : {std::pair{RootKind::A, 2}, std::pair{RootKind::C, 2}, std::pair{RootKind::A, 3}}) {
    const RootSystem rs = build_root_system(kind, rank);
    for (int trial = 0; trial < 40; ++trial) {
      LatticeVector lambda = dominant_representative(rs, random_vector(rng, rank)).dominant;
      if (lambda.is_zero()) continue;
      std::set<LatticeVector> orbit;
      for (const auto& w : rs.weyl_group()) orbit.insert(w.apply(lambda));
      std::optional<Rational> best;
      for (const auto& a : orbit)
        for (const auto& b : orbit)
          if (a < b) {
            const Rational d2 = rs.norm_squared(a - b);
            if (!best || d2 < *best) best = d2;
          }
      if (!best) continue;
      CHECK(orbit_separation_constant(rs, lambda).squared == *best / rs.norm_squared(lambda));
    }
  }
}

TEST_CASE("CAT(0) comparison holds on exact flat triples") {
  CounterRng rng(2024);
  const std::vector<Rational> grid = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  int violations = 0;
  for (auto [kind, rank] : {std::pair{RootKind::A, 2}, std::pair{RootKind::C, 2}}) {
    const RootSystem rs = build_root_system(kind, rank);
    for (int trial = 0; trial < 200; ++trial) {
      const LatticeVector o = random_vector(rng, rank);
      const LatticeVector a = random_vector(rng, rank);
      const LatticeVector b = random_vector(rng, rank);
      for (const auto& t1 : grid)
        for (const auto& t2 : grid)
          if (!cat0_comparison_holds(rs, o, a, b, t1, t2)) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("vector distance in the apartment") {
  const RootSystem c2 = build_root_system(RootKind::C, 2);
  CHECK(vector_distance_apartment(c2, ints({0, 1}), LatticeVector(2)) == ints({0, 1}));
  const RootSystem a2 = build_root_system(RootKind::A, 2);
  // -omega_1 folds onto omega_2 in type A2.
  CHECK(vector_distance_apartment(a2, ints({1, 0}), LatticeVector(2)) == ints({0, 1}));
  CHECK(vector_distance_apartment(a2, LatticeVector(2), ints({2, -1})) == ints({1, 1}));
}

TEST_CASE("vertex types") {
  const RootSystem a2 = build_root_system(RootKind::A, 2);
  CHECK(vertex_type(a2, ints({1, 0})) == 1);
  CHECK(vertex_type(a2, ints({0, 1})) == 2);
  CHECK(vertex_type(a2, ints({1, 1})) == 0);
  CHECK_THROWS_AS(vertex_type(a2, LatticeVector{Rational(1, 2), Rational(0)}), std::invalid_argument);
  const RootSystem c2 = build_root_system(RootKind::C, 2);
  CHECK(c2.in_coroot_lattice(ints({1, 0})));
  CHECK(!c2.in_coroot_lattice(ints({0, 1})));
  CHECK(vertex_type(c2, ints({1, 0})) == 0);
  CHECK(vertex_type(c2, ints({0, 1})) == 2);
  // Types are invariant under coroot translations.
  for (const Root& root : a2.positive_roots()) CHECK(vertex_type(a2, ints({1, 0}) + root.coroot) == 1);
}

TEST_CASE("sectors contain their translated chamber") {
  const RootSystem a2 = build_root_system(RootKind::A, 2);
  for (const auto& w : a2.weyl_group()) {
    Sector s(a2, ints({1, -1}), w);
    CHECK(s.contains(ints({1, -1})));
    CHECK(s.contains(ints({1, -1}) + w.apply(ints({2, 3}))));
    if (w.length() > 0) CHECK(!s.contains(ints({1, -1}) + ints({2, 3})));
  }
  CHECK_THROWS_AS(Sector(a2, LatticeVector{Rational(1, 3), Rational(0)}, a2.identity()), std::invalid_argument);
}
