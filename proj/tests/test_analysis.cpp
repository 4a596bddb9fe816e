#include "support.hpp"

#include <weylwalk/analysis.hpp>
#include <weylwalk/sampling.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace weylwalk;

namespace {

LatticeVector ints(std::initializer_list<int> c) {
  std::vector<int> v(c);
  return LatticeVector::from_integers(v);
}

Record rec(std::uint64_t traj, std::uint64_t n, LatticeVector h, LatticeVector lam) {
  Record r;
  r.traj = traj;
  r.n = n;
  r.h = std::move(h);
  r.lam = std::move(lam);
  return r;
}

Dataset tree_run(std::uint64_t steps, std::uint64_t trajectories, std::uint64_t seed, std::uint64_t every = 0) {
  SamplingOptions opt;
  opt.steps = steps;
  opt.trajectories = trajectories;
  opt.base_seed = seed;
  opt.checkpoint_every = every;
  return sample_trajectories(SemiIsotropicKernel::isotropic({1, 2}), opt);
}

double sample_variance(const std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double s = 0;
  for (double v : x) s += (v - mean) * (v - mean);
  return s / static_cast<double>(x.size() - 1);
}

std::vector<double> final_speeds(const Dataset& d) {
  std::vector<double> out;
  for (const Record& r : d.records)
    if (r.n > 0 && r.n == d.records.back().n) out.push_back(to_double(r.lam[0]) / static_cast<double>(r.n));
  return out;
}

}  // namespace

TEST_CASE("speed and drift estimates on a hand-made dataset") {
  Dataset d;
  d.rank = 2;
  d.records = {rec(0, 0, ints({0, 0}), ints({0, 0})), rec(0, 10, ints({-2, 1}), ints({2, 1})),
               rec(1, 0, ints({0, 0}), ints({0, 0})), rec(1, 10, ints({-4, 3}), ints({4, 3}))};
  const Estimate lam = empirical_speed(d);
  CHECK(lam.n == 10);
  CHECK(lam.trajectories == 2);
  CHECK(lam.mean[0] == doctest::Approx(0.3));
  CHECK(lam.mean[1] == doctest::Approx(0.2));
  CHECK(lam.se[0] == doctest::Approx(0.1));
  const Estimate mu = empirical_busemann_drift(d);
  CHECK(mu.mean[0] == doctest::Approx(-0.3));
  CHECK(mu.mean[1] == doctest::Approx(0.2));
  CHECK(tolerances(lam)[0] == doctest::Approx(0.4));
  CHECK(tolerances(lam, 4.0, 0.5)[0] == doctest::Approx(0.5));

  Dataset empty;
  CHECK_THROWS_AS(empirical_speed(empty), std::invalid_argument);
  Dataset ragged = d;
  ragged.records.back().n = 9;
  CHECK_THROWS_AS(empirical_speed(ragged), std::invalid_argument);
  Dataset at_zero;
  at_zero.rank = 1;
  at_zero.records = {rec(0, 0, ints({0}), ints({0}))};
  CHECK_THROWS_AS(empirical_speed(at_zero), std::invalid_argument);
}

TEST_CASE("orbit relation") {
  const RootSystem a1 = build_root_system(RootKind::A, 1);
  const std::vector<double> lam = {0.3325}, mu = {-0.3321};
  const OrbitMatch m = check_orbit_relation(a1, lam, mu, 0.02);
  CHECK(m.pass);
  CHECK(to_string(m.witness) == "s1");
  // Ambient norm: |omega| = 1/sqrt 2 in type A1.
  CHECK(m.distance == doctest::Approx(0.0004 / std::sqrt(2.0)));
  CHECK(!check_orbit_relation(a1, lam, std::vector<double>{0.1}, 0.02).pass);

  // Same witness after scaling both vectors by a positive constant.
  const RootSystem a2 = build_root_system(RootKind::A, 2);
  const std::vector<double> l2 = {0.216, 0.212}, m2 = {-0.211, -0.216};
  const OrbitMatch base = check_orbit_relation(a2, l2, m2, 0.02);
  CHECK(base.pass);
  CHECK(to_string(base.witness) == "s1 s2 s1");
  for (double s : {0.5, 3.0, 17.0}) {
    std::vector<double> ls = l2, ms = m2;
    for (auto& x : ls) x *= s;
    for (auto& x : ms) x *= s;
    CHECK(to_string(check_orbit_relation(a2, ls, ms, 0.02 * s).witness) == "s1 s2 s1");
  }
}

TEST_CASE("orbit relation does not depend on trajectory labels") {
  const RootSystem a1 = build_root_system(RootKind::A, 1);
  Dataset d = tree_run(2000, 12, 4);
  Dataset relabelled = d;
  for (Record& r : relabelled.records) r.traj = 11 - r.traj;
  std::stable_sort(relabelled.records.begin(), relabelled.records.end(),
                   [](const Record& a, const Record& b) { return a.traj < b.traj; });
  const auto l1 = empirical_speed(d), l2 = empirical_speed(relabelled);
  const auto m1 = empirical_busemann_drift(d), m2 = empirical_busemann_drift(relabelled);
  CHECK(l1.mean[0] == doctest::Approx(l2.mean[0]));
  CHECK(m1.mean[0] == doctest::Approx(m2.mean[0]));
  CHECK(to_string(check_orbit_relation(a1, l1.mean, m1.mean, 0.05).witness) ==
        to_string(check_orbit_relation(a1, l2.mean, m2.mean, 0.05).witness));
}

TEST_CASE("theoretical drift") {
  const RootSystem a1 = build_root_system(RootKind::A, 1);
  const auto tree = theoretical_drift(a1, factor_kernel(SemiIsotropicKernel::isotropic({1, 2})));
  CHECK(tree.mu == LatticeVector{Rational(-1, 3)});
  CHECK(tree.lambda == LatticeVector{Rational(1, 3)});
  CHECK(to_string(tree.witness) == "s1");

  const RootSystem a2 = build_root_system(RootKind::A, 2);
  const auto iso = theoretical_drift(a2, factor_kernel(SemiIsotropicKernel::isotropic({2, 2})));
  CHECK(iso.lambda == LatticeVector{Rational(3, 14), Rational(3, 14)});
  CHECK(iso.mu == LatticeVector{Rational(-3, 14), Rational(-3, 14)});
  CHECK(iso.witness.apply(iso.lambda) == iso.mu);
  CHECK(to_string(iso.witness) == "s1 s2 s1");

  // Dominant nonzero drift: the witness is the identity.
  const auto toward = parse_kernel("nu=1 mu=1 p=1", {1, 2});
  const auto up = theoretical_drift(a1, factor_kernel(toward));
  CHECK(up.mu == ints({1}));
  CHECK(up.witness.length() == 0);
  const auto mixed = parse_kernel("nu=1 mu=1,0 p=1/2\nnu=2 mu=0,1 p=1/2", {2, 2});
  const auto d = theoretical_drift(a2, factor_kernel(mixed));
  CHECK(d.mu.is_dominant());
  CHECK(d.witness.length() == 0);

  const auto flat = theoretical_drift(a2, factor_kernel(SemiIsotropicKernel::drift_free({2, 2})));
  CHECK(flat.mu.is_zero());
  CHECK(flat.lambda.is_zero());
}

TEST_CASE("conditions two and three agree on simulated nearest-neighbour walks") {
  const RootSystem a1 = build_root_system(RootKind::A, 1);
  const Dataset d = tree_run(4000, 20, 9, 500);
  const std::vector<double> lambda = {1.0 / 3.0};
  const auto c2 = check_condition2(a1, d, lambda);
  const auto c3 = check_condition3(a1, d, lambda);
  CHECK(c2.pass);
  CHECK(c3.pass);
  CHECK(to_string(c2.witness) == "s1");
  const auto probe = probe_steps(a1, d);
  CHECK(probe.ok);
  CHECK(probe.pairs == 20 * 8);
  CHECK(probe.limit == doctest::Approx(std::sqrt(0.5)));

  // A wrong target fails both.
  const std::vector<double> wrong = {0.45};
  CHECK(!check_condition2(a1, d, wrong).pass);
  CHECK(!check_condition3(a1, d, wrong).pass);

  const auto reg = regularity_residuals(a1, d, lambda, 0.1);
  CHECK(reg.pass);
  for (std::size_t k = 1; k < reg.residuals.size(); ++k) CHECK(reg.residuals[k - 1].n < reg.residuals[k].n);
}

TEST_CASE("a teleporting trajectory is caught by the step probe") {
  const RootSystem a1 = build_root_system(RootKind::A, 1);
  Dataset d = tree_run(4000, 20, 9, 500);
  const std::vector<double> lambda = {1.0 / 3.0};
  // Trajectory 3 jumps by n/4 edges between n = 2000 and n = 2001 and stays displaced.
  for (Record& r : d.records)
    if (r.traj == 3 && r.n > 2000) {
      r.lam[0] += Rational(500);
      r.h[0] -= Rational(500);
    }
  const auto probe = probe_steps(a1, d);
  CHECK(!probe.ok);
  CHECK(probe.max_step > 100);
  CHECK(!check_condition2(a1, d, lambda).steps_ok);
  CHECK(!check_condition3(a1, d, lambda).steps_ok);
  CHECK(!check_condition2(a1, d, lambda).pass);
  CHECK(!check_condition3(a1, d, lambda).pass);
  CHECK(!regularity_residuals(a1, d, lambda, 0.1).pass);
}

TEST_CASE("end-convergence statistics of reduced chains") {
  SamplingOptions opt;
  opt.steps = 200000;
  opt.trajectories = 4;
  opt.base_seed = 2;
  const Dataset d = sample_trajectories(ReducedChainConfig::drift_free(2, Rational(1, 2)), opt);
  const auto rep = end_convergence_stats(d, 10);
  CHECK(rep.runs == 4);
  CHECK(rep.expected_z == doctest::Approx(0.25));
  CHECK(std::abs(rep.mean_z - 0.25) < 4 * rep.se_z + 0.01);
  CHECK(rep.violations == 0);
  CHECK(rep.final_y.size() == 4);
  CHECK(rep.max_y >= *std::max_element(rep.final_y.begin(), rep.final_y.end()));
  CHECK_THROWS_AS(end_convergence_stats(tree_run(10, 1, 1), 10), std::invalid_argument);

  // Deterministic up drift: every step is a hit with Z = 1.
  opt.steps = 1000;
  opt.trajectories = 1;
  const Dataset up = sample_trajectories(ReducedChainConfig(2, Rational(1), Rational(0), Rational(0)), opt);
  const auto r = end_convergence_stats(up, 50);
  CHECK(r.hits == 1000);
  CHECK(r.mean_z == doctest::Approx(1.0));
  CHECK(r.final_y == std::vector<std::int64_t>{1000});
  CHECK(r.fraction_reaching == doctest::Approx(1.0));
}

TEST_CASE("tree claim report") {
  TreeClaimCounts c;
  c.at_hit[2][2] = 100;
  c.at_hit[0][0] = 50;
  c.at_hit[0][1] = 50;
  c.at_hit[1][1] = 30;
  CHECK(c.hit_steps() == 230);
  CHECK(c.down_catch_fraction() == doctest::Approx(0.5));
  CHECK(check_tree_claims(c, 2).pass);
  c.at_hit[2][1] = 1;
  CHECK(!check_tree_claims(c, 2).claim2a);
  c.at_hit[2][1] = 0;
  c.off_hit_moves = 1;
  CHECK(!check_tree_claims(c, 2).claim1);
  c.off_hit_moves = 0;
  c.at_hit[0][0] = 80;
  CHECK(!check_tree_claims(c, 2).fraction_ok);
}

TEST_CASE("doubling N roughly halves the variance of the speed estimate") {
  // Median over batches of 50 runs, so one unlucky batch does not decide.
  std::vector<double> ratios;
  for (std::uint64_t batch = 0; batch < 9; ++batch) {
    const double v1 = sample_variance(final_speeds(tree_run(1500, 50, 100 + batch)));
    const double v2 = sample_variance(final_speeds(tree_run(3000, 50, 200 + batch)));
    ratios.push_back(v2 / v1);
  }
  std::nth_element(ratios.begin(), ratios.begin() + 4, ratios.end());
  const double median = ratios[4];
  CHECK(median >= 0.3);
  CHECK(median <= 0.8);
}
