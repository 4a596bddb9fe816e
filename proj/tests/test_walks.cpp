#include "support.hpp"

#include <weylwalk/padic.hpp>
#include <weylwalk/sampling.hpp>
#include <weylwalk/walks.hpp>

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

using namespace weylwalk;

namespace {

LatticeVector ints(std::initializer_list<int> c) {
  std::vector<int> v(c);
  return LatticeVector::from_integers(v);
}

Vertex random_walk_vertex(CounterRng& rng, const BuildingParams& p, int steps) {
  Vertex x = Vertex::base(p);
  for (int s = 0; s < steps; ++s) {
    const auto nbrs = all_neighbors(x);
    x = nbrs[rng.uniform_below(nbrs.size())];
  }
  return x;
}

// |observed - n p| <= 3 sqrt(n p (1 - p)) for every cell.
template <class Key>
void check_multinomial(const std::map<Key, std::uint64_t>& observed, const std::map<Key, Rational>& law,
                       std::uint64_t n) {
  std::uint64_t seen = 0;
  for (const auto& [k, count] : observed) {
    REQUIRE(law.count(k) == 1);
    seen += count;
  }
  CHECK(seen == n);
  for (const auto& [k, p] : law) {
    const double pd = to_double(p);
    const double expected = pd * static_cast<double>(n);
    const double sigma = std::sqrt(static_cast<double>(n) * pd * (1 - pd));
    const auto it = observed.find(k);
    const double got = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    CHECK(std::abs(got - expected) <= 3 * sigma + 1e-9);
  }
}

}  // namespace

TEST_CASE("random streams") {
  CounterRng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  CHECK(a.counter() == 100);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CounterRng r(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.uniform_below(7) < 7);
    const double u = r.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(!r.bernoulli(Rational(0)));
    CHECK(r.bernoulli(Rational(1)));
  }
  std::map<std::size_t, std::uint64_t> counts;
  const std::vector<Rational> w = {Rational(1, 6), Rational(1, 2), Rational(1, 3)};
  const DiscreteSampler sampler(w);
  const std::uint64_t n = 60000;
  for (std::uint64_t i = 0; i < n; ++i) ++counts[sampler(r)];
  check_multinomial(counts, std::map<std::size_t, Rational>{{0, w[0]}, {1, w[1]}, {2, w[2]}}, n);
}

TEST_CASE("Schubert cell counts match enumeration") {
  for (std::size_t n : {2, 3, 4})
    for (int q : {2, 3})
      for (std::size_t i = 1; i < n; ++i) {
        std::map<std::vector<std::size_t>, std::uint64_t> by_pivots;
        for (const auto& v : subspaces(n, q, i)) ++by_pivots[v.pivots];
        for (const auto& [piv, count] : by_pivots) CHECK(schubert_count(n, q, piv) == count);
      }
}

TEST_CASE("tree neighbour classes") {
  const Vertex o = Vertex::base({1, 2});
  CHECK(count_c(o, ints({1}), ints({-1})) == 2);
  CHECK(count_c(o, ints({1}), ints({1})) == 1);
  CHECK(count_c(o, ints({1}), ints({0})) == 0);
}

TEST_CASE("A2 neighbour classes and their independence of the basepoint") {
  const BuildingParams p{2, 2};
  const Vertex o = Vertex::base(p);
  const std::map<LatticeVector, std::uint64_t> omega1 = {{ints({0, -1}), 4}, {ints({-1, 1}), 2}, {ints({1, 0}), 1}};
  const std::map<LatticeVector, std::uint64_t> omega2 = {{ints({-1, 0}), 4}, {ints({1, -1}), 2}, {ints({0, 1}), 1}};
  CHECK(busemann_offset_counts(o, ints({1, 0})) == omega1);
  CHECK(busemann_offset_counts(o, ints({0, 1})) == omega2);
  CounterRng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const Vertex x = random_walk_vertex(rng, p, 1 + trial % 5);
    CHECK(busemann_offset_counts(x, ints({1, 0})) == omega1);
    CHECK(busemann_offset_counts(x, ints({0, 1})) == omega2);
    // Translating the basepoint in the apartment does not change the counts either.
    const Vertex shifted = translation_vertex(2, ints({trial - 5, 3 - trial}));
    CHECK(busemann_offset_counts(shifted, ints({1, 0})) == omega1);
  }
  const auto kernel = SemiIsotropicKernel::isotropic(p);
  for (const auto& c : kernel.classes())
    CHECK(c.count == count_c(o, LatticeVector::unit(2, static_cast<std::size_t>(c.nu - 1)), c.mu));
}

TEST_CASE("factor kernels of the isotropic walks") {
  const auto tree = factor_kernel(SemiIsotropicKernel::isotropic({1, 2}));
  CHECK(tree == FactorKernel{{ints({-1}), Rational(2, 3)}, {ints({1}), Rational(1, 3)}});

  const auto a2 = factor_kernel(SemiIsotropicKernel::isotropic({2, 2}));
  const FactorKernel expected = {{ints({-1, 0}), Rational(2, 7)},  {ints({-1, 1}), Rational(1, 7)},
                                 {ints({0, -1}), Rational(2, 7)},  {ints({0, 1}), Rational(1, 14)},
                                 {ints({1, -1}), Rational(1, 7)},  {ints({1, 0}), Rational(1, 14)}};
  CHECK(a2 == expected);
  LatticeVector drift(2);
  for (const auto& [mu, p] : a2) drift += p * mu;
  CHECK(drift == LatticeVector{Rational(-3, 14), Rational(-3, 14)});

  for (int rank : {1, 2, 3}) {
    const auto fk = factor_kernel(SemiIsotropicKernel::drift_free({rank, 2}));
    LatticeVector m(static_cast<std::size_t>(rank));
    Rational total(0);
    for (const auto& [mu, p] : fk) {
      m += p * mu;
      total += p;
    }
    CHECK(m.is_zero());
    CHECK(total == Rational(1));
  }
}

TEST_CASE("kernel validation and text form") {
  const BuildingParams p{1, 2};
  CHECK_THROWS_AS(SemiIsotropicKernel(p, {{1, ints({1}), Rational(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(SemiIsotropicKernel(p, {{1, ints({1}), Rational(1)}, {1, ints({1}), Rational(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SemiIsotropicKernel(p, {{1, ints({2}), Rational(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(SemiIsotropicKernel(p, {{1, ints({1}), Rational(2)}, {1, ints({-1}), Rational(-1, 2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SemiIsotropicKernel(p, {{3, ints({1}), Rational(1)}}), std::invalid_argument);

  const auto k = parse_kernel("# tree, biased toward the end\nnu=1 mu=1 p=1/2\nnu=1 mu=-1 p=1/4\n", p);
  CHECK(k.classes().size() == 2);
  CHECK(k.class_mass(0) + k.class_mass(1) == Rational(1));
  const auto again = parse_kernel(format_kernel(k), p);
  CHECK(format_kernel(again) == format_kernel(k));
  CHECK(factor_kernel(parse_kernel("nu=1 mu=1 p=1/3; nu=1 mu=-1 p=1/3", p)) ==
        factor_kernel(SemiIsotropicKernel::isotropic(p)));
  CHECK_THROWS_AS(parse_kernel("nu=1 mu=1", p), std::invalid_argument);
  CHECK_THROWS_AS(parse_kernel("nu=1 mu=1 p=x", p), std::invalid_argument);
  CHECK_THROWS_AS(parse_kernel("nu=1 mu=1,0 p=1", p), std::invalid_argument);
  CHECK_THROWS_AS(parse_kernel("bogus", p), std::invalid_argument);
}

TEST_CASE("stay-put kernel never moves") {
  for (int rank : {1, 2}) {
    const auto k = SemiIsotropicKernel::stay_put({rank, 2});
    CounterRng rng(1);
    const Vertex x = random_walk_vertex(rng, {rank, 2}, 3);
    for (int i = 0; i < 20; ++i) CHECK(step_semi_isotropic(x, k, rng) == x);
  }
}

TEST_CASE("isotropic tree step from o is uniform over the neighbours") {
  const BuildingParams p{1, 2};
  const auto k = SemiIsotropicKernel::isotropic(p);
  const Vertex o = Vertex::base(p);
  std::map<std::string, std::uint64_t> counts;
  std::map<std::string, Rational> law;
  for (const auto& y : all_neighbors(o)) law[to_string(y)] = Rational(1, 3);
  CounterRng rng(5);
  const std::uint64_t n = 30000;
  for (std::uint64_t i = 0; i < n; ++i) ++counts[to_string(step_semi_isotropic(o, k, rng))];
  check_multinomial(counts, law, n);
}

TEST_CASE("class frequencies follow p times c") {
  const BuildingParams p{2, 2};
  const auto k = parse_kernel(
      "nu=1 mu=0,-1 p=1/16\nnu=1 mu=-1,1 p=1/8\nnu=1 mu=1,0 p=1/4\n"
      "nu=2 mu=-1,0 p=1/48\nnu=2 mu=1,-1 p=1/24\nnu=2 mu=0,1 p=1/12",
      p);
  std::map<std::size_t, Rational> law;
  for (std::size_t c = 0; c < k.classes().size(); ++c) law[c] = k.class_mass(c);
  std::map<std::size_t, std::uint64_t> counts;
  CounterRng rng(8);
  const std::uint64_t n = 100000;
  for (std::uint64_t i = 0; i < n; ++i) ++counts[k.sample(rng).cls];
  check_multinomial(counts, law, n);
}

TEST_CASE("Busemann increments of the building walk follow the factor kernel") {
  for (const BuildingParams p : {BuildingParams{1, 3}, BuildingParams{2, 2}}) {
    const auto k = SemiIsotropicKernel::isotropic(p);
    const auto fk = factor_kernel(k);
    CounterRng rng(12);
    Vertex x = Vertex::base(p);
    std::map<LatticeVector, std::uint64_t> counts;
    const std::uint64_t n = 100000;
    for (std::uint64_t i = 0; i < n; ++i) {
      const Vertex y = step_semi_isotropic(x, k, rng);
      ++counts[busemann(y) - busemann(x)];
      x = y;
    }
    check_multinomial(counts, fk, n);
  }
}

TEST_CASE("group walks") {
  const BuildingParams p{2, 2};
  const auto config = GroupWalkConfig::neighbour_generators(p);
  CHECK(config.generators().size() == 14);
  CounterRng rng(4);
  GroupWalkState s = GroupWalkState::identity(p);
  CHECK(s.position() == Vertex::base(p));
  Vertex prev = s.position();
  for (int i = 0; i < 50; ++i) {
    step_group_walk(s, config, rng);
    const Vertex now = s.position();
    CHECK(determinant(s.g).valuation() == s.det_valuation);
    // Left multiplication by g_1 ... g_n is an isometry, so each step is a move to a neighbour.
    const LatticeVector d = vector_distance(prev, now);
    CHECK((d == ints({1, 0}) || d == ints({0, 1})));
    prev = now;
  }
  LaurentMatrix singular(3, 2);
  CHECK_THROWS_AS(GroupWalkConfig(p, {{singular, Rational(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupWalkConfig(p, {{LaurentMatrix::identity(3, 2), Rational(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupWalkConfig(p, {{LaurentMatrix::identity(2, 2), Rational(1)}}), std::invalid_argument);
}

TEST_CASE("reduced chain transitions") {
  CounterRng rng(6);
  const auto chain = ReducedChainConfig::drift_free(2, Rational(1, 2));
  CHECK(chain.expected_z_at_hit() == Rational(1, 4));
  CHECK(chain.is_drift_free());

  // Below the hitting set nothing happens to Y.
  for (int i = 0; i < 200; ++i) {
    ReducedChainState s{-3, 0};
    const ReducedStep step = step_reduced_chain(s, chain, rng);
    CHECK(!step.hit);
    CHECK(step.z == 0);
    CHECK(s.y == 0);
  }
  // At a hit: up forces Z = 1, down gives Z = -1 with probability 1/q.
  std::uint64_t downs = 0, caught = 0;
  for (int i = 0; i < 20000; ++i) {
    ReducedChainState s{0, 0};
    const ReducedStep step = step_reduced_chain(s, chain, rng);
    CHECK(step.hit);
    if (step.increment == 1) CHECK(step.z == 1);
    if (step.increment == -1) {
      ++downs;
      if (step.z == -1) ++caught;
      CHECK(step.z <= 0);
    }
    CHECK(s.y >= s.xbar);
  }
  const double frac = static_cast<double>(caught) / static_cast<double>(downs);
  CHECK(std::abs(frac - 0.5) <= 3 * std::sqrt(0.25 / static_cast<double>(downs)));

  ReducedChainState bad{2, 1};
  CHECK_THROWS_AS(step_reduced_chain(bad, chain, rng), std::invalid_argument);
  CHECK_THROWS_AS(ReducedChainConfig(2, Rational(1, 2), Rational(1, 3), Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(ReducedChainConfig(1, Rational(1), Rational(0), Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(ReducedChainConfig::drift_free(2, Rational(2, 3)), std::invalid_argument);

  // Deterministic up drift: Y tracks Xbar and every step is a hit with Z = 1.
  const ReducedChainConfig up(3, Rational(1), Rational(0), Rational(0));
  ReducedChainState s;
  for (int i = 0; i < 100; ++i) {
    const ReducedStep step = step_reduced_chain(s, up, rng);
    CHECK(step.hit);
    CHECK(step.z == 1);
    CHECK(s.y == s.xbar);
  }

  const auto projected = ReducedChainConfig::from_factor(2, factor_kernel(SemiIsotropicKernel::isotropic({2, 2})), 0);
  CHECK(projected.p_up() == Rational(3, 14));
  CHECK(projected.p_down() == Rational(3, 7));
}

TEST_CASE("projection returns of drift-free factor walks") {
  const auto fk = factor_kernel(SemiIsotropicKernel::drift_free({2, 2}));
  CounterRng rng(3);
  CHECK(count_projection_returns(fk, 0, 100000, rng) > 10);
  // A walk with drift leaves and rarely returns.
  const auto biased = factor_kernel(SemiIsotropicKernel::isotropic({1, 2}));
  CHECK(count_projection_returns(biased, 0, 100000, rng) < 50);
  CHECK_THROWS_AS(count_projection_returns(fk, 2, 10, rng), std::invalid_argument);
}

TEST_CASE("tree claims on a short run") {
  const auto counts = tree_claim_statistics(SemiIsotropicKernel::drift_free({1, 2}), 5000, 100, 7);
  CHECK(counts.hit_steps() >= 5000);
  CHECK(counts.anomalies == 0);
  CHECK(counts.off_hit_moves == 0);
  CHECK(counts.at_hit[2][1] == 0);
  CHECK(counts.at_hit[2][0] == 0);
  CHECK(counts.at_hit[1][0] == 0);
  CHECK(counts.at_hit[1][2] == 0);
  CHECK(std::abs(counts.down_catch_fraction() - 0.5) < 0.05);
  CHECK_THROWS_AS(tree_claim_statistics(SemiIsotropicKernel::isotropic({2, 2}), 10, 10, 1), std::invalid_argument);
}

TEST_CASE("checkpoint schedule") {
  CHECK(checkpoint_schedule(10, 5) == std::vector<std::uint64_t>{0, 1, 5, 6, 10});
  CHECK(checkpoint_schedule(10, 0) == std::vector<std::uint64_t>{0, 1, 10});
  CHECK(checkpoint_schedule(0, 3) == std::vector<std::uint64_t>{0});
  CHECK(checkpoint_schedule(4, 1) == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
}

TEST_CASE("zero-step sampling is a single record at o") {
  SamplingOptions opt;
  opt.steps = 0;
  const Dataset d = sample_trajectories(SemiIsotropicKernel::isotropic({1, 2}), opt);
  REQUIRE(d.records.size() == 1);
  CHECK(d.records[0].n == 0);
  CHECK(d.records[0].h.is_zero());
  CHECK(d.records[0].lam.is_zero());
}

TEST_CASE("sampling is deterministic and independent of the worker count") {
  const auto k = SemiIsotropicKernel::isotropic({2, 2});
  SamplingOptions opt;
  opt.steps = 300;
  opt.trajectories = 6;
  opt.base_seed = 17;
  opt.checkpoint_every = 50;
  opt.threads = 1;
  const Dataset a = sample_trajectories(k, opt);
  opt.threads = 3;
  const Dataset b = sample_trajectories(k, opt);
  CHECK(a == b);
  std::ostringstream sa, sb;
  write_csv(sa, a);
  write_csv(sb, b);
  CHECK(sa.str() == sb.str());

  const auto chain = ReducedChainConfig::drift_free(2, Rational(1, 2));
  opt.steps = 1000;
  CHECK(sample_trajectories(chain, opt) == sample_trajectories(chain, opt));
  const auto group = GroupWalkConfig::neighbour_generators({1, 2});
  opt.steps = 40;
  CHECK(sample_trajectories(group, opt) == sample_trajectories(group, opt));
}

TEST_CASE("disjoint trajectory ranges merge into the full run") {
  const auto k = SemiIsotropicKernel::isotropic({1, 2});
  SamplingOptions opt;
  opt.steps = 200;
  opt.trajectories = 8;
  opt.base_seed = 5;
  opt.checkpoint_every = 20;
  const Dataset full = sample_trajectories(k, opt);
  opt.trajectories = 3;
  const Dataset first = sample_trajectories(k, opt);
  opt.first_trajectory = 3;
  opt.trajectories = 5;
  const Dataset second = sample_trajectories(k, opt);
  const Dataset merged = merge_datasets(first, second);
  CHECK(merged.records == full.records);
  CHECK(merged.trajectories() == full.trajectories());
  CHECK(merge_datasets(second, first).records == full.records);
  CHECK_THROWS_AS(merge_datasets(first, first), std::invalid_argument);
  opt.base_seed = 6;
  CHECK_THROWS_AS(merge_datasets(first, sample_trajectories(k, opt)), std::invalid_argument);
}

TEST_CASE("CSV round trip") {
  SamplingOptions opt;
  opt.steps = 500;
  opt.trajectories = 3;
  opt.checkpoint_every = 100;
  for (const Dataset& d : {sample_trajectories(SemiIsotropicKernel::isotropic({2, 2}), opt),
                           sample_trajectories(ReducedChainConfig::drift_free(2, Rational(1, 2)), opt)}) {
    std::stringstream s;
    write_csv(s, d);
    const Dataset back = read_csv(s);
    CHECK(back == d);
  }
  std::istringstream bad1("traj,n\n");
  CHECK_THROWS_AS(read_csv(bad1), std::invalid_argument);
  std::istringstream bad2("# weylwalk-dataset v1\n# kind=iso\n# rank=1\ntraj,n,h_1,lam_1\n0,0,1\n");
  CHECK_THROWS_AS(read_csv(bad2), std::invalid_argument);
  std::istringstream bad3("# weylwalk-dataset v9\n");
  CHECK_THROWS_AS(read_csv(bad3), std::invalid_argument);
}

TEST_CASE("worker count honours the environment cap") {
  setenv("WEYLWALK_THREADS", "1", 1);
  CHECK(default_worker_count(10) == 1);
  unsetenv("WEYLWALK_THREADS");
  CHECK(default_worker_count(1) == 1);
  CHECK(default_worker_count(100) >= 1);
}
