#pragma once

// Random walks on the building of PGL_n and on its Busemann factor lattice:
// group walks X_n = g_1 ... g_n o, semi-isotropic nearest-neighbour walks,
// the factor walk of Busemann values and the one-coordinate reduced chain
// (Xbar, Y) that tracks entry into the standard apartment.

#include "weylwalk/building.hpp"
#include "weylwalk/rng.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace weylwalk {

// ---------------------------------------------------------------------------
// Neighbour classes

// q^dim: the number of neighbours x R_V o whose subspace has the given pivots.
std::uint64_t schubert_count(std::size_t n, int q, const std::vector<std::size_t>& pivots);

// #{y : d(x, y) = nu and h(y) - h(x) = mu}, by enumerating the sphere.
std::uint64_t count_c(const Vertex& x, const LatticeVector& nu, const LatticeVector& mu);
// The nonzero counts of the sphere of radius nu, keyed by Busemann offset.
std::map<LatticeVector, std::uint64_t> busemann_offset_counts(const Vertex& x, const LatticeVector& nu);

// One class of neighbours: type nu (0 means staying put) and Busemann
// offset mu, with transition probability p to each member.
struct KernelClass {
  int nu = 0;
  LatticeVector mu;
  Rational p;
  // Derived from (nu, mu) by the kernel.
  std::vector<std::size_t> pivots;
  std::uint64_t count = 1;
};

class SemiIsotropicKernel {
 public:
  // Throws std::invalid_argument if a class is not a neighbour class, is
  // repeated, has negative p, or if the class masses p * c do not sum to 1.
  SemiIsotropicKernel(const BuildingParams& params, std::vector<KernelClass> classes);

  // Mass 1 / (number of neighbours) on every neighbour.
  static SemiIsotropicKernel isotropic(const BuildingParams& params);
  // Equal mass on every Busemann offset, so the factor walk has no drift.
  static SemiIsotropicKernel drift_free(const BuildingParams& params);
  static SemiIsotropicKernel stay_put(const BuildingParams& params);

  const BuildingParams& params() const { return params_; }
  const std::vector<KernelClass>& classes() const { return classes_; }
  Rational class_mass(std::size_t k) const;

  struct Move {
    std::size_t cls = 0;
    Subspace subspace;
  };
  // A class drawn with probability p * c, then a uniform member of it.
  Move sample(CounterRng& rng) const;

 private:
  BuildingParams params_;
  std::vector<KernelClass> classes_;
  DiscreteSampler sampler_;
};

// Lines "nu=<i> mu=<c1,c2,...> p=<rational>"; ';' also separates lines,
// blank lines and '#' comments are skipped.
SemiIsotropicKernel parse_kernel(std::string_view text, const BuildingParams& params);
std::string format_kernel(const SemiIsotropicKernel& kernel);

// Law of h(X_1) - h(X_0): mu -> sum over nu of p_{nu,mu} c_{nu,mu}.
using FactorKernel = std::map<LatticeVector, Rational>;
FactorKernel factor_kernel(const SemiIsotropicKernel& kernel);

Vertex step_semi_isotropic(const Vertex& x, const SemiIsotropicKernel& kernel, CounterRng& rng);

// ---------------------------------------------------------------------------
// Group walks

struct Generator {
  LaurentMatrix g;
  Rational p;
};

class GroupWalkConfig {
 public:
  // Generators must be invertible over F and probabilities positive with sum 1.
  GroupWalkConfig(const BuildingParams& params, std::vector<Generator> generators);

  // The coset representatives R_V of all neighbours of o, uniformly.
  static GroupWalkConfig neighbour_generators(const BuildingParams& params);

  const BuildingParams& params() const { return params_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::int64_t det_valuation(std::size_t k) const { return det_valuations_[k]; }
  std::size_t sample(CounterRng& rng) const { return sampler_(rng); }

 private:
  BuildingParams params_;
  std::vector<Generator> generators_;
  std::vector<std::int64_t> det_valuations_;
  DiscreteSampler sampler_;
};

struct GroupWalkState {
  LaurentMatrix g;
  std::int64_t det_valuation = 0;

  static GroupWalkState identity(const BuildingParams& params);
  Vertex position() const { return canonicalize(g, det_valuation); }
};

void step_group_walk(GroupWalkState& state, const GroupWalkConfig& config, CounterRng& rng);

// ---------------------------------------------------------------------------
// Reduced chain

class ReducedChainConfig {
 public:
  // Law of the Xbar increment on {+1, 0, -1}; q is the residue parameter.
  ReducedChainConfig(int q, Rational p_up, Rational p_stay, Rational p_down);
  static ReducedChainConfig drift_free(int q, Rational p_up);
  // Projection of a factor kernel on coordinate i (0-based).
  static ReducedChainConfig from_factor(int q, const FactorKernel& kernel, std::size_t i);

  int q() const { return q_; }
  const Rational& p_up() const { return p_[0]; }
  const Rational& p_stay() const { return p_[1]; }
  const Rational& p_down() const { return p_[2]; }
  bool is_drift_free() const { return p_[0] == p_[2]; }
  // (1 - 1/q) P[+1], the mean of Z at hitting times.
  Rational expected_z_at_hit() const;
  int sample_increment(CounterRng& rng) const;

 private:
  int q_;
  std::array<Rational, 3> p_;
  DiscreteSampler sampler_;
};

struct ReducedChainState {
  std::int64_t xbar = 0;
  std::int64_t y = 0;
};

struct ReducedStep {
  int increment = 0;
  int z = 0;
  bool hit = false;  // xbar == y before the step
};

// Throws std::invalid_argument if y < xbar.
ReducedStep step_reduced_chain(ReducedChainState& state, const ReducedChainConfig& config,
                               CounterRng& rng);

// ---------------------------------------------------------------------------
// Factor walk and tree statistics

// Runs the factor walk from 0 and counts the times n in 1..steps with
// <Xbar_n, alpha_i> = 0.
std::uint64_t count_projection_returns(const FactorKernel& kernel, std::size_t i, std::uint64_t steps,
                                       CounterRng& rng);

// Joint behaviour of h and pi = sector_entry_level along tree walks.
struct TreeClaimCounts {
  // Steps taken from a vertex with h == pi, indexed [dh + 1][dpi + 1].
  std::array<std::array<std::uint64_t, 3>, 3> at_hit{};
  std::uint64_t off_hit_steps = 0;
  // Steps from h < pi after which pi changed.
  std::uint64_t off_hit_moves = 0;
  // Vertices seen with h > pi, and steps from h == pi with |dpi| > 1.
  std::uint64_t anomalies = 0;

  std::uint64_t hit_steps() const;
  // Fraction of down steps at hitting times with pi decreasing too.
  double down_catch_fraction() const;
};

// Runs trajectories of the given length from o, trajectory j seeded by
// derive_seed(base_seed, j), until at least min_hit_steps hitting-time steps
// have been seen. Rank 1 only.
TreeClaimCounts tree_claim_statistics(const SemiIsotropicKernel& kernel, std::uint64_t min_hit_steps,
                                      std::uint64_t steps_per_trajectory, std::uint64_t base_seed);

}  // namespace weylwalk
