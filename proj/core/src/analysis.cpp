#include "weylwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace weylwalk {

namespace {

std::map<std::uint64_t, const Record*> final_records(const Dataset& data) {
  std::map<std::uint64_t, const Record*> last;
  for (const Record& r : data.records) {
    auto& slot = last[r.traj];
    if (!slot || slot->n < r.n) slot = &r;
  }
  return last;
}

template <class Get>
Estimate estimate(const Dataset& data, Get get) {
  const auto last = final_records(data);
  if (last.empty()) throw std::invalid_argument("dataset has no records");
  Estimate e;
  e.n = last.begin()->second->n;
  if (e.n == 0) throw std::invalid_argument("trajectories must end after at least one step");
  const auto r = static_cast<std::size_t>(data.rank);
  std::vector<double> sum(r, 0.0), sq(r, 0.0);
  for (const auto& [traj, rec] : last) {
    if (rec->n != e.n) throw std::invalid_argument("trajectories end at different step counts");
    const LatticeVector& v = get(*rec);
    for (std::size_t i = 0; i < r; ++i) {
      const double x = to_double(v[i]) / static_cast<double>(e.n);
      sum[i] += x;
      sq[i] += x * x;
    }
  }
  const auto m = static_cast<double>(last.size());
  e.trajectories = last.size();
  e.mean.resize(r);
  e.se.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    e.mean[i] = sum[i] / m;
    const double var = m > 1 ? std::max(0.0, (sq[i] - m * e.mean[i] * e.mean[i]) / (m - 1)) : 0.0;
    e.se[i] = std::sqrt(var / m);
  }
  return e;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

bool within(std::span<const double> a, std::span<const double> b, std::span<const double> tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol[i]) return false;
  return true;
}

void require_rank(const RootSystem& rs, const Dataset& data, std::size_t lambda_size) {
  if (rs.rank() != data.rank || lambda_size != static_cast<std::size_t>(rs.rank()))
    throw std::invalid_argument("root system, dataset and target have different ranks");
}

}  // namespace

Estimate empirical_speed(const Dataset& data) {
  return estimate(data, [](const Record& r) -> const LatticeVector& { return r.lam; });
}

Estimate empirical_busemann_drift(const Dataset& data) {
  return estimate(data, [](const Record& r) -> const LatticeVector& { return r.h; });
}

std::vector<double> tolerances(const Estimate& e, double factor, double floor) {
  std::vector<double> out(e.se.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(factor * e.se[i], floor);
  return out;
}

std::vector<double> apply(const WeylWord& w, std::span<const double> x) {
  const IntMatrix& m = w.matrix();
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m(i, j) * x[j];
  return out;
}

OrbitMatch check_orbit_relation(const RootSystem& rs, std::span<const double> lambda, std::span<const double> mu,
                                double tol) {
  if (lambda.size() != static_cast<std::size_t>(rs.rank()) || mu.size() != lambda.size())
    throw std::invalid_argument("vectors have the wrong rank");
  OrbitMatch best;
  best.distance = INFINITY;
  for (const WeylWord& w : rs.weyl_group()) {
    std::vector<double> diff = apply(w, lambda);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= mu[i];
    const double d = rs.norm(diff);
    // Ties within rounding keep the earlier element.
    if (d < best.distance - 1e-12) {
      best.distance = d;
      best.witness = w;
    }
  }
  best.pass = best.distance <= tol;
  return best;
}

TheoreticalDrift theoretical_drift(const RootSystem& rs, const FactorKernel& kernel) {
  TheoreticalDrift out;
  out.mu = LatticeVector(static_cast<std::size_t>(rs.rank()));
  for (const auto& [nu, p] : kernel) {
    if (nu.rank() != out.mu.rank()) throw std::invalid_argument("factor kernel has the wrong rank");
    out.mu += p * nu;
  }
  auto dec = dominant_representative(rs, out.mu);
  out.lambda = dec.dominant;
  out.witness = dec.word;
  return out;
}

StepProbe probe_steps(const RootSystem& rs, const Dataset& data) {
  StepProbe probe;
  for (int i = 0; i < rs.rank(); ++i)
    probe.limit = std::max(probe.limit, rs.norm(rs.fundamental_coweight(static_cast<std::size_t>(i))));
  const Record* prev = nullptr;
  for (const Record& r : data.records) {
    if (prev && prev->traj == r.traj && r.n == prev->n + 1) {
      const double dh = rs.norm(r.h - prev->h);
      const double dlam = std::abs(rs.norm(r.lam) - rs.norm(prev->lam));
      probe.max_step = std::max({probe.max_step, dh, dlam});
      ++probe.pairs;
    }
    prev = &r;
  }
  probe.ok = probe.pairs > 0 && probe.max_step <= probe.limit + 1e-9;
  return probe;
}

RegularityResiduals regularity_residuals(const RootSystem& rs, const Dataset& data, std::span<const double> lambda,
                                         double tol) {
  require_rank(rs, data, lambda.size());
  std::map<std::uint64_t, double> worst;
  const auto r = lambda.size();
  std::vector<double> diff(r);
  for (const Record& rec : data.records) {
    if (rec.n == 0) continue;
    for (std::size_t i = 0; i < r; ++i) diff[i] = to_double(rec.lam[i]) / static_cast<double>(rec.n) - lambda[i];
    double& w = worst[rec.n];
    w = std::max(w, rs.norm(diff));
  }
  RegularityResiduals out;
  for (const auto& [n, v] : worst) out.residuals.push_back({n, v});
  out.steps = probe_steps(rs, data);
  out.pass = out.steps.ok && !out.residuals.empty() && out.residuals.back().value < tol;
  return out;
}

ConditionCheck check_condition2(const RootSystem& rs, const Dataset& data, std::span<const double> lambda) {
  require_rank(rs, data, lambda.size());
  const Estimate mu = empirical_busemann_drift(data);
  const auto tol = tolerances(mu);
  ConditionCheck out;
  out.steps_ok = probe_steps(rs, data).ok;
  out.deviation = INFINITY;
  for (const WeylWord& w : rs.weyl_group()) {
    const auto target = apply(w, lambda);
    const double d = max_abs_diff(mu.mean, target);
    if (d < out.deviation - 1e-12) {
      out.deviation = d;
      out.witness = w;
      out.limit_ok = within(mu.mean, target, tol);
    }
  }
  out.pass = out.steps_ok && out.limit_ok;
  return out;
}

ConditionCheck check_condition3(const RootSystem& rs, const Dataset& data, std::span<const double> lambda) {
  require_rank(rs, data, lambda.size());
  const Estimate lam = empirical_speed(data);
  ConditionCheck out;
  out.steps_ok = probe_steps(rs, data).ok;
  out.deviation = max_abs_diff(lam.mean, lambda);
  out.limit_ok = within(lam.mean, lambda, tolerances(lam));
  out.witness = rs.identity();
  out.pass = out.steps_ok && out.limit_ok;
  return out;
}

EndConvergenceReport end_convergence_stats(const Dataset& data, std::int64_t threshold) {
  if (data.kind != WalkKind::Reduced) throw std::invalid_argument("end-convergence statistics need a reduced-chain dataset");
  if (data.summaries.empty()) throw std::invalid_argument("dataset has no reduced-chain summaries");
  const std::string q_text = data.config_value("q");
  const std::string p_text = data.config_value("p_up");
  if (q_text.empty() || p_text.empty()) throw std::invalid_argument("dataset lacks q or p_up");
  const Rational q = parse_rational(q_text);
  const Rational p_up = parse_rational(p_text);

  EndConvergenceReport out;
  out.threshold = threshold;
  out.expected_z = to_double((Rational(1) - Rational(1) / q) * p_up);
  out.runs = data.summaries.size();
  out.max_y = data.summaries.front().y_final;
  std::uint64_t z_up = 0, z_down = 0, down_at_hit = 0, reaching = 0;
  for (const ReducedSummary& s : data.summaries) {
    out.hits += s.hits;
    z_up += s.z_up;
    z_down += s.z_down;
    down_at_hit += s.down_at_hit;
    out.violations += s.violations;
    out.final_y.push_back(s.y_final);
    out.max_y = std::max(out.max_y, s.y_final);
    if (s.y_final >= threshold) ++reaching;
  }
  for (const Record& r : data.records) out.max_y = std::max(out.max_y, r.y);
  if (out.hits > 0) {
    const auto h = static_cast<double>(out.hits);
    out.mean_z = (static_cast<double>(z_up) - static_cast<double>(z_down)) / h;
    const double second = (static_cast<double>(z_up) + static_cast<double>(z_down)) / h;
    out.se_z = std::sqrt(std::max(0.0, second - out.mean_z * out.mean_z) / h);
  }
  if (down_at_hit > 0) out.down_catch_fraction = static_cast<double>(z_down) / static_cast<double>(down_at_hit);
  out.fraction_reaching = static_cast<double>(reaching) / static_cast<double>(out.runs);
  return out;
}

TreeClaimReport check_tree_claims(const TreeClaimCounts& c, int q, double tol) {
  TreeClaimReport out;
  const auto& a = c.at_hit;
  out.claim1 = c.off_hit_moves == 0;
  out.claim2a = a[2][0] == 0 && a[2][1] == 0;
  out.claim2b = a[1][0] == 0 && a[1][2] == 0;
  out.claim2c = a[0][2] == 0;
  out.down_catch_fraction = c.down_catch_fraction();
  out.fraction_ok = std::abs(out.down_catch_fraction - 1.0 / q) <= tol;
  out.pass = out.claim1 && out.claim2a && out.claim2b && out.claim2c && out.fraction_ok && c.anomalies == 0;
  return out;
}

}  // namespace weylwalk
