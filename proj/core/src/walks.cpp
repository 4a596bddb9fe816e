#include "weylwalk/walks.hpp"

#include "weylwalk/padic.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weylwalk {

std::uint64_t schubert_count(std::size_t n, int q, const std::vector<std::size_t>& pivots) {
  std::uint64_t c = 1;
  for (std::size_t k = schubert_dimension(n, pivots); k > 0; --k) c *= static_cast<std::uint64_t>(q);
  return c;
}

std::map<LatticeVector, std::uint64_t> busemann_offset_counts(const Vertex& x, const LatticeVector& nu) {
  const LatticeVector hx = busemann(x);
  std::map<LatticeVector, std::uint64_t> out;
  for (const Vertex& y : sphere(x, nu)) ++out[busemann(y) - hx];
  return out;
}

std::uint64_t count_c(const Vertex& x, const LatticeVector& nu, const LatticeVector& mu) {
  const auto counts = busemann_offset_counts(x, nu);
  const auto it = counts.find(mu);
  return it == counts.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Semi-isotropic kernels

namespace {

std::vector<std::size_t> pivots_for(const BuildingParams& params, int nu, const LatticeVector& mu) {
  if (nu < 0 || nu > params.rank)
    throw std::invalid_argument("kernel class nu=" + std::to_string(nu) + " is outside 0.." +
                                std::to_string(params.rank));
  if (mu.rank() != static_cast<std::size_t>(params.rank))
    throw std::invalid_argument("kernel offset " + to_string(mu) + " has the wrong rank");
  for (auto& s : pivot_sets(params.n(), static_cast<std::size_t>(nu)))
    if (pivot_offset(params.n(), s) == mu) return s;
  throw std::invalid_argument("offset " + to_string(mu) + " is not a Busemann offset of a type-" +
                              std::to_string(nu) + " neighbour");
}

std::vector<KernelClass> all_neighbour_classes(const BuildingParams& params) {
  std::vector<KernelClass> out;
  for (int i = 1; i <= params.rank; ++i)
    for (auto& s : pivot_sets(params.n(), static_cast<std::size_t>(i))) {
      KernelClass c;
      c.nu = i;
      c.mu = pivot_offset(params.n(), s);
      out.push_back(std::move(c));
    }
  return out;
}

}  // namespace

SemiIsotropicKernel::SemiIsotropicKernel(const BuildingParams& params, std::vector<KernelClass> classes)
    : params_(params), classes_(std::move(classes)) {
  params_.validate();
  if (classes_.empty()) throw std::invalid_argument("kernel has no classes");
  std::set<std::pair<int, LatticeVector>> seen;
  Rational total(0);
  std::vector<Rational> masses;
  for (KernelClass& c : classes_) {
    c.pivots = pivots_for(params_, c.nu, c.mu);
    c.count = schubert_count(params_.n(), params_.q, c.pivots);
    if (!seen.insert({c.nu, c.mu}).second)
      throw std::invalid_argument("kernel class nu=" + std::to_string(c.nu) + " mu=" + to_string(c.mu) +
                                  " is listed twice");
    if (c.p.numerator() < 0) throw std::invalid_argument("kernel probability is negative");
    masses.push_back(c.p * static_cast<std::int64_t>(c.count));
    total += masses.back();
  }
  if (total != Rational(1))
    throw std::invalid_argument("kernel masses p*c sum to " + to_string(total) + ", not 1");
  sampler_ = DiscreteSampler(masses);
}

SemiIsotropicKernel SemiIsotropicKernel::isotropic(const BuildingParams& params) {
  params.validate();
  auto classes = all_neighbour_classes(params);
  std::int64_t neighbours = 0;
  for (const auto& c : classes)
    neighbours += static_cast<std::int64_t>(schubert_count(params.n(), params.q, pivots_for(params, c.nu, c.mu)));
  for (auto& c : classes) c.p = Rational(1, neighbours);
  return SemiIsotropicKernel(params, std::move(classes));
}

SemiIsotropicKernel SemiIsotropicKernel::drift_free(const BuildingParams& params) {
  params.validate();
  auto classes = all_neighbour_classes(params);
  const auto k = static_cast<std::int64_t>(classes.size());
  for (auto& c : classes) {
    const auto count = schubert_count(params.n(), params.q, pivots_for(params, c.nu, c.mu));
    c.p = Rational(1, k * static_cast<std::int64_t>(count));
  }
  return SemiIsotropicKernel(params, std::move(classes));
}

SemiIsotropicKernel SemiIsotropicKernel::stay_put(const BuildingParams& params) {
  KernelClass c;
  c.nu = 0;
  c.mu = LatticeVector(static_cast<std::size_t>(params.rank));
  c.p = Rational(1);
  return SemiIsotropicKernel(params, {c});
}

Rational SemiIsotropicKernel::class_mass(std::size_t k) const {
  const KernelClass& c = classes_.at(k);
  return c.p * static_cast<std::int64_t>(c.count);
}

SemiIsotropicKernel::Move SemiIsotropicKernel::sample(CounterRng& rng) const {
  Move m;
  m.cls = sampler_(rng);
  const KernelClass& c = classes_[m.cls];
  m.subspace.pivots = c.pivots;
  const std::size_t dim = schubert_dimension(params_.n(), c.pivots);
  m.subspace.free.resize(dim);
  // One draw covers all free entries: its base-q digits.
  std::uint64_t code = c.count > 1 ? rng.uniform_below(c.count) : 0;
  const auto q = static_cast<std::uint64_t>(params_.q);
  for (std::size_t k = 0; k < dim; ++k) {
    m.subspace.free[k] = static_cast<std::uint8_t>(code % q);
    code /= q;
  }
  return m;
}

SemiIsotropicKernel parse_kernel(std::string_view text, const BuildingParams& params) {
  std::vector<KernelClass> classes;
  std::string lines(text);
  std::replace(lines.begin(), lines.end(), ';', '\n');
  std::istringstream in(lines);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string field;
    KernelClass c;
    bool has_nu = false, has_mu = false, has_p = false;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("kernel line " + std::to_string(line_no) + ": " + what);
    };
    while (fields >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + field + "'");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      try {
        if (key == "nu") {
          std::size_t used = 0;
          c.nu = std::stoi(value, &used);
          if (used != value.size()) fail("bad nu '" + value + "'");
          has_nu = true;
        } else if (key == "mu") {
          std::vector<Rational> coords;
          std::istringstream parts(value);
          std::string part;
          while (std::getline(parts, part, ',')) coords.push_back(parse_rational(part));
          c.mu = LatticeVector(std::move(coords));
          has_mu = true;
        } else if (key == "p") {
          c.p = parse_rational(value);
          has_p = true;
        } else {
          fail("unknown key '" + key + "'");
        }
      } catch (const std::invalid_argument& e) {
        if (std::string_view(e.what()).starts_with("kernel line")) throw;
        fail(e.what());
      } catch (const std::out_of_range&) {
        fail("value out of range in '" + field + "'");
      }
    }
    if (!has_nu && !has_mu && !has_p) continue;
    if (!(has_nu && has_mu && has_p)) fail("each class needs nu, mu and p");
    classes.push_back(std::move(c));
  }
  return SemiIsotropicKernel(params, std::move(classes));
}

std::string format_kernel(const SemiIsotropicKernel& kernel) {
  std::string out;
  for (const KernelClass& c : kernel.classes()) {
    out += "nu=" + std::to_string(c.nu) + " mu=";
    for (std::size_t i = 0; i < c.mu.rank(); ++i) {
      if (i) out += ',';
      out += to_string(c.mu[i]);
    }
    out += " p=" + to_string(c.p) + "\n";
  }
  return out;
}

FactorKernel factor_kernel(const SemiIsotropicKernel& kernel) {
  FactorKernel out;
  for (std::size_t k = 0; k < kernel.classes().size(); ++k) {
    const Rational mass = kernel.class_mass(k);
    if (mass.numerator() == 0) continue;
    out[kernel.classes()[k].mu] += mass;
  }
  return out;
}

Vertex step_semi_isotropic(const Vertex& x, const SemiIsotropicKernel& kernel, CounterRng& rng) {
  const auto move = kernel.sample(rng);
  if (move.subspace.pivots.empty()) return x;
  return neighbor(x, move.subspace);
}

// ---------------------------------------------------------------------------
// Group walks

GroupWalkConfig::GroupWalkConfig(const BuildingParams& params, std::vector<Generator> generators)
    : params_(params), generators_(std::move(generators)) {
  params_.validate();
  if (generators_.empty()) throw std::invalid_argument("group walk needs at least one generator");
  Rational total(0);
  std::vector<Rational> weights;
  for (const Generator& gen : generators_) {
    if (gen.g.size() != params_.n() || gen.g.q() != params_.q)
      throw std::invalid_argument("generator has the wrong size or field");
    if (gen.p.numerator() <= 0) throw std::invalid_argument("generator probabilities must be positive");
    const LaurentPolynomial det = determinant(gen.g);
    if (det.is_zero()) throw std::invalid_argument("generator is singular");
    det_valuations_.push_back(det.valuation());
    weights.push_back(gen.p);
    total += gen.p;
  }
  if (total != Rational(1))
    throw std::invalid_argument("generator probabilities sum to " + to_string(total) + ", not 1");
  sampler_ = DiscreteSampler(weights);
}

GroupWalkConfig GroupWalkConfig::neighbour_generators(const BuildingParams& params) {
  params.validate();
  std::vector<Generator> gens;
  for (int i = 1; i <= params.rank; ++i)
    for (const Subspace& v : subspaces(params.n(), params.q, static_cast<std::size_t>(i)))
      gens.push_back({coset_representative(params.n(), params.q, v), Rational(0)});
  const auto count = static_cast<std::int64_t>(gens.size());
  for (auto& g : gens) g.p = Rational(1, count);
  return GroupWalkConfig(params, std::move(gens));
}

GroupWalkState GroupWalkState::identity(const BuildingParams& params) {
  params.validate();
  return {LaurentMatrix::identity(params.n(), params.q), 0};
}

void step_group_walk(GroupWalkState& state, const GroupWalkConfig& config, CounterRng& rng) {
  const std::size_t k = config.sample(rng);
  state.g = state.g * config.generators()[k].g;
  state.det_valuation += config.det_valuation(k);
}

// ---------------------------------------------------------------------------
// Reduced chain

ReducedChainConfig::ReducedChainConfig(int q, Rational p_up, Rational p_stay, Rational p_down)
    : q_(q), p_{p_up, p_stay, p_down} {
  if (q < 2) throw std::invalid_argument("residue parameter q must be at least 2");
  for (const Rational& p : p_)
    if (p.numerator() < 0) throw std::invalid_argument("increment probabilities must be nonnegative");
  if (p_up + p_stay + p_down != Rational(1))
    throw std::invalid_argument("increment probabilities must sum to 1");
  sampler_ = DiscreteSampler(p_);
}

ReducedChainConfig ReducedChainConfig::drift_free(int q, Rational p_up) {
  if (p_up.numerator() < 0 || p_up * 2 > Rational(1))
    throw std::invalid_argument("drift-free chain needs 0 <= p_up <= 1/2");
  return ReducedChainConfig(q, p_up, Rational(1) - p_up * 2, p_up);
}

ReducedChainConfig ReducedChainConfig::from_factor(int q, const FactorKernel& kernel, std::size_t i) {
  std::array<Rational, 3> p{Rational(0), Rational(0), Rational(0)};
  for (const auto& [mu, mass] : kernel) {
    if (i >= mu.rank()) throw std::invalid_argument("coordinate out of range");
    const Rational& c = mu[i];
    if (c == Rational(1)) p[0] += mass;
    else if (c.numerator() == 0) p[1] += mass;
    else if (c == Rational(-1)) p[2] += mass;
    else throw std::invalid_argument("factor kernel is not nearest-neighbour in coordinate " + std::to_string(i + 1));
  }
  return ReducedChainConfig(q, p[0], p[1], p[2]);
}

Rational ReducedChainConfig::expected_z_at_hit() const {
  return (Rational(1) - Rational(1, q_)) * p_[0];
}

int ReducedChainConfig::sample_increment(CounterRng& rng) const {
  return 1 - static_cast<int>(sampler_(rng));
}

ReducedStep step_reduced_chain(ReducedChainState& state, const ReducedChainConfig& config, CounterRng& rng) {
  if (state.y < state.xbar)
    throw std::invalid_argument("reduced chain state has y < xbar");
  ReducedStep s;
  s.increment = config.sample_increment(rng);
  s.hit = state.xbar == state.y;
  if (s.hit) {
    if (s.increment == 1) s.z = 1;
    else if (s.increment == -1 && rng.bernoulli(Rational(1, config.q()))) s.z = -1;
  }
  state.xbar += s.increment;
  state.y += s.z;
  return s;
}

// ---------------------------------------------------------------------------
// Factor walk and tree statistics

std::uint64_t count_projection_returns(const FactorKernel& kernel, std::size_t i, std::uint64_t steps,
                                       CounterRng& rng) {
  std::vector<Rational> weights;
  std::vector<std::int64_t> moves;
  for (const auto& [mu, mass] : kernel) {
    if (i >= mu.rank()) throw std::invalid_argument("coordinate out of range");
    if (mu[i].denominator() != 1) throw std::invalid_argument("factor kernel offset is not integral");
    weights.push_back(mass);
    moves.push_back(mu[i].numerator());
  }
  const DiscreteSampler sampler(weights);
  std::int64_t x = 0;
  std::uint64_t returns = 0;
  for (std::uint64_t n = 0; n < steps; ++n) {
    x += moves[sampler(rng)];
    if (x == 0) ++returns;
  }
  return returns;
}

std::uint64_t TreeClaimCounts::hit_steps() const {
  std::uint64_t total = 0;
  for (const auto& row : at_hit)
    for (auto c : row) total += c;
  return total;
}

double TreeClaimCounts::down_catch_fraction() const {
  const std::uint64_t down = at_hit[0][0] + at_hit[0][1] + at_hit[0][2];
  return down == 0 ? 0.0 : static_cast<double>(at_hit[0][0]) / static_cast<double>(down);
}

TreeClaimCounts tree_claim_statistics(const SemiIsotropicKernel& kernel, std::uint64_t min_hit_steps,
                                      std::uint64_t steps_per_trajectory, std::uint64_t base_seed) {
  if (kernel.params().rank != 1) throw std::invalid_argument("tree statistics need rank 1");
  if (steps_per_trajectory == 0) throw std::invalid_argument("trajectories need at least one step");
  TreeClaimCounts out;
  auto level = [](const Vertex& v) { return v.exponents()[0] - v.exponents()[1]; };
  for (std::uint64_t j = 0; out.hit_steps() < min_hit_steps; ++j) {
    CounterRng rng(derive_seed(base_seed, j));
    Vertex x = Vertex::base(kernel.params());
    std::int64_t h = 0, pi = 0;
    for (std::uint64_t n = 0; n < steps_per_trajectory; ++n) {
      Vertex y = step_semi_isotropic(x, kernel, rng);
      const std::int64_t h2 = level(y);
      const std::int64_t pi2 = sector_entry_level_direct(y);
      if (h2 > pi2) ++out.anomalies;
      const std::int64_t dh = h2 - h, dpi = pi2 - pi;
      if (h == pi) {
        if (dh < -1 || dh > 1 || dpi < -1 || dpi > 1) ++out.anomalies;
        else ++out.at_hit[static_cast<std::size_t>(dh + 1)][static_cast<std::size_t>(dpi + 1)];
      } else if (h < pi) {
        ++out.off_hit_steps;
        if (dpi != 0) ++out.off_hit_moves;
      }
      x = std::move(y);
      h = h2;
      pi = pi2;
    }
  }
  return out;
}

}  // namespace weylwalk
