#pragma once

// Estimators and checks on trajectory datasets: speed and Busemann drift,
// the orbit relation between them, sublinear residuals with a step-size
// probe, and the hitting-time statistics of reduced chains.

#include "weylwalk/coxeter.hpp"
#include "weylwalk/dataset.hpp"
#include "weylwalk/walks.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace weylwalk {

// Per-coordinate mean and standard error over trajectories.
struct Estimate {
  std::vector<double> mean;
  std::vector<double> se;
  std::uint64_t n = 0;           // common final step count
  std::uint64_t trajectories = 0;
};

// Mean of d(o, X_N) / N over the final records. Throws std::invalid_argument
// for empty datasets or trajectories ending at different N or at N = 0.
Estimate empirical_speed(const Dataset& data);
// Mean of h(X_N) / N.
Estimate empirical_busemann_drift(const Dataset& data);

// max(factor * se_i, floor) per coordinate.
std::vector<double> tolerances(const Estimate& e, double factor = 4.0, double floor = 0.02);

std::vector<double> apply(const WeylWord& w, std::span<const double> x);

struct OrbitMatch {
  bool pass = false;
  WeylWord witness;     // argmin of |w lambda - mu|, first in shortlex order
  double distance = 0;  // the minimum
};

OrbitMatch check_orbit_relation(const RootSystem& rs, std::span<const double> lambda, std::span<const double> mu,
                                double tol);

struct TheoreticalDrift {
  LatticeVector mu;      // sum of pbar(0, nu) nu
  LatticeVector lambda;  // dominant representative of mu
  WeylWord witness;      // witness(lambda) = mu
};

TheoreticalDrift theoretical_drift(const RootSystem& rs, const FactorKernel& kernel);

struct Residual {
  std::uint64_t n = 0;
  double value = 0;  // max over trajectories of |d(o, X_n) / n - lambda|
};

struct StepProbe {
  // Largest lower bound for d(X_n, X_{n+1}) over consecutive checkpoints:
  // max(|h(X_{n+1}) - h(X_n)|, | |d(o,X_{n+1})| - |d(o,X_n)| |).
  double max_step = 0;
  double limit = 0;  // max_i |omega_i|, the nearest-neighbour step length
  std::uint64_t pairs = 0;
  bool ok = false;
};

StepProbe probe_steps(const RootSystem& rs, const Dataset& data);

struct RegularityResiduals {
  std::vector<Residual> residuals;  // by increasing n, excluding n = 0
  StepProbe steps;
  bool pass = false;  // final residual < tol and steps ok
};

RegularityResiduals regularity_residuals(const RootSystem& rs, const Dataset& data, std::span<const double> lambda,
                                         double tol);

// Condition (2): h(X_n) = n mu + o(n) with mu in W0 lambda; condition (3):
// d(o, X_n) = n lambda + o(n). Both include the step-size probe and use the
// per-coordinate tolerances max(4 SE, 0.02).
struct ConditionCheck {
  bool steps_ok = false;
  bool limit_ok = false;
  bool pass = false;
  double deviation = 0;  // max over coordinates of |estimate - target|
  WeylWord witness;      // orbit element used for condition (2)
};

ConditionCheck check_condition2(const RootSystem& rs, const Dataset& data, std::span<const double> lambda);
ConditionCheck check_condition3(const RootSystem& rs, const Dataset& data, std::span<const double> lambda);

struct EndConvergenceReport {
  std::uint64_t runs = 0;
  std::uint64_t hits = 0;
  double mean_z = 0;   // empirical mean of Z at hitting times
  double se_z = 0;
  double expected_z = 0;  // (1 - 1/q) P[+1]
  double down_catch_fraction = 0;  // P[Z = -1 | increment -1 at a hit]
  std::int64_t max_y = 0;
  std::int64_t threshold = 0;
  double fraction_reaching = 0;  // runs with Y_N >= threshold
  std::uint64_t violations = 0;  // steps with Y < Xbar, over all runs
  std::vector<std::int64_t> final_y;
};

// Throws std::invalid_argument unless the dataset comes from reduced chains.
EndConvergenceReport end_convergence_stats(const Dataset& data, std::int64_t threshold);

struct TreeClaimReport {
  bool claim1 = false;   // pi unchanged off the hitting set
  bool claim2a = false;  // up step at a hit raises pi
  bool claim2b = false;  // level step at a hit keeps pi
  bool claim2c = false;  // down step at a hit lowers pi by at most one
  bool fraction_ok = false;
  double down_catch_fraction = 0;
  bool pass = false;
};

TreeClaimReport check_tree_claims(const TreeClaimCounts& counts, int q, double tol = 0.02);

}  // namespace weylwalk
