#include "commands.hpp"

#include "text.hpp"

#include <weylwalk/analysis.hpp>
#include <weylwalk/building.hpp>
#include <weylwalk/finite_field.hpp>
#include <weylwalk/padic.hpp>
#include <weylwalk/sampling.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace weylwalk::cli {

using Json = nlohmann::ordered_json;

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(to_string(x));
  return out;
}

Json rationals(const LatticeVector& v) { return rationals(v.coords()); }

Json rational_rows(const std::vector<std::vector<Rational>>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(rationals(r));
  return out;
}

Json doubles(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

BuildingParams building(int rank, int q) {
  BuildingParams p{rank, q};
  p.validate();
  return p;
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// CSV histogram of Busemann offsets, ordered by <mu, 2 rho>.
void write_offset_rows(std::ostream& out, const RootSystem& rs, const std::map<LatticeVector, std::uint64_t>& counts) {
  std::vector<std::pair<LatticeVector, std::uint64_t>> rows(counts.begin(), counts.end());
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return height_less(rs, a.first, b.first); });
  for (int i = 1; i <= rs.rank(); ++i) out << "mu_offset_" << i << ',';
  out << "count\n";
  for (const auto& [mu, c] : rows) {
    for (const Rational& x : mu.coords()) out << to_string(x) << ',';
    out << c << "\n";
  }
}

std::uint64_t total(const std::map<LatticeVector, std::uint64_t>& counts) {
  std::uint64_t s = 0;
  for (const auto& kv : counts) s += kv.second;
  return s;
}

std::vector<std::vector<std::string>> parse_rows(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty JSON array of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("matrix rows must be arrays");
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (e.is_string()) r.push_back(e.get<std::string>());
      else if (e.is_number_integer()) r.push_back(std::to_string(e.get<long long>()));
      else throw std::invalid_argument("matrix entries must be strings");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<Generator> parse_generators(const std::string& text, int q) {
  std::vector<Generator> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto m = line.find(" m=");
    if (line.compare(first, 2, "p=") != 0 || m == std::string::npos)
      throw std::invalid_argument("generator line " + std::to_string(line_no) + ": expected 'p=<rational> m=<json>'");
    try {
      Generator g;
      std::string p = line.substr(first + 2, m - first - 2);
      while (!p.empty() && p.back() == ' ') p.pop_back();
      g.p = parse_rational(p);
      g.g = to_laurent(parse_matrix(parse_rows(line.substr(m + 3)), q));
      out.push_back(std::move(g));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("generator line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string coords_text(const LatticeVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.rank(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out;
}

std::vector<double> to_doubles(const LatticeVector& v) {
  std::vector<double> out;
  for (const Rational& x : v.coords()) out.push_back(to_double(x));
  return out;
}

}  // namespace

void rootsys_show(std::ostream& out, const std::string& type, int rank, bool stamp) {
  const RootSystem rs = build_root_system(parse_root_kind(type), rank);
  Json j;
  j["schema"] = "weylwalk-rootsys v1";
  if (stamp) j["stamp"] = utc_timestamp();
  j["type"] = rs.label();
  j["rank"] = rank;
  j["simple_roots"] = rational_rows(rs.simple_roots_ambient());
  j["simple_coroots"] = rational_rows(rs.simple_coroots_ambient());
  j["fundamental_coweights"] = rational_rows(rs.fundamental_coweights_ambient());
  j["cartan_matrix"] = rs.cartan_matrix();
  Json roots = Json::array();
  for (const Root& r : rs.positive_roots())
    roots.push_back({{"coefficients", r.coefficients}, {"ambient", rationals(r.ambient)}, {"height", r.height()}});
  j["positive_roots"] = roots;
  const Root& phi = rs.highest_root();
  j["highest_root"] = {{"coefficients", phi.coefficients}, {"ambient", rationals(phi.ambient)}};
  j["weyl_group_order"] = rs.weyl_group().size();
  j["longest_element"] = to_string(rs.longest_element());
  write_json(out, j);
}

void oracle_decompose(std::ostream& out, int q, const std::string& matrix_json, bool stamp) {
  require_supported_modulus(q);
  const RationalFunctionMatrix m = parse_matrix(parse_rows(matrix_json), q);
  const auto lambda = smith_valuations(m);
  const auto mu = iwasawa_valuations(m);
  const RationalFunction det = determinant(m);
  Json j;
  j["schema"] = "weylwalk-decompose v1";
  if (stamp) j["stamp"] = utc_timestamp();
  j["q"] = q;
  j["size"] = m.size();
  j["det_valuation"] = det.valuation();
  j["smith_valuations"] = lambda;
  j["iwasawa_valuations"] = mu;
  if (m.size() >= 2) {
    j["vector_distance"] = rationals(coweight_from_exponents(lambda));
    j["busemann"] = rationals(coweight_from_exponents(mu));
  }
  write_json(out, j);
}

void oracle_ccount(std::ostream& out, int rank, int q, const std::string& nu_text, std::uint64_t basepoints,
                   std::uint64_t seed, bool stamp) {
  const BuildingParams params = building(rank, q);
  const RootSystem rs = build_root_system(RootKind::A, rank);
  const LatticeVector nu = parse_coweight(nu_text, rank);
  const Vertex o = Vertex::base(params);
  const auto counts = busemann_offset_counts(o, nu);
  const auto kernel = SemiIsotropicKernel::isotropic(params);
  for (std::uint64_t k = 0; k < basepoints; ++k) {
    CounterRng rng(derive_seed(seed, k));
    Vertex x = o;
    const std::uint64_t len = 1 + rng.uniform_below(6);
    for (std::uint64_t s = 0; s < len; ++s) x = step_semi_isotropic(x, kernel, rng);
    if (busemann_offset_counts(x, nu) != counts)
      throw std::runtime_error("counts around basepoint " + to_string(x) + " differ from those around o");
  }
  out << "# weylwalk-ccount v1\n";
  out << "# rank=" << rank << " q=" << q << " nu=" << coords_text(nu) << " total=" << total(counts)
      << " basepoints_agreeing=" << basepoints << "\n";
  if (stamp) out << "# stamp=" << utc_timestamp() << "\n";
  write_offset_rows(out, rs, counts);
}

void building_sphere(std::ostream& out, int rank, int q, const std::string& nu_text, bool stamp) {
  const BuildingParams params = building(rank, q);
  const RootSystem rs = build_root_system(RootKind::A, rank);
  const LatticeVector nu = parse_coweight(nu_text, rank);
  const auto counts = busemann_offset_counts(Vertex::base(params), nu);
  out << "# weylwalk-sphere v1\n";
  out << "# rank=" << rank << " q=" << q << " nu=" << coords_text(nu) << " size=" << total(counts) << "\n";
  if (stamp) out << "# stamp=" << utc_timestamp() << "\n";
  write_offset_rows(out, rs, counts);
}

void walk_command(std::ostream& out, const WalkOptions& o) {
  SamplingOptions s;
  s.steps = o.steps;
  s.trajectories = o.trajectories;
  s.base_seed = o.seed;
  s.checkpoint_every = o.checkpoint_every;
  s.first_trajectory = o.first_trajectory;
  s.threads = o.threads;
  Dataset data;
  if (o.kind == "iso") {
    const BuildingParams params = building(o.rank, o.q);
    if (!o.kernel.empty()) {
      data = sample_trajectories(parse_kernel(read_file(o.kernel), params), s);
    } else if (o.preset == "isotropic") {
      data = sample_trajectories(SemiIsotropicKernel::isotropic(params), s);
    } else if (o.preset == "drift-free") {
      data = sample_trajectories(SemiIsotropicKernel::drift_free(params), s);
    } else {
      throw std::invalid_argument("unknown kernel preset '" + o.preset + "'");
    }
  } else if (o.kind == "group") {
    const BuildingParams params = building(o.rank, o.q);
    if (o.generators.empty()) {
      data = sample_trajectories(GroupWalkConfig::neighbour_generators(params), s);
      data.config.insert(data.config.begin(), {"generator_set", "neighbours"});
    } else {
      data = sample_trajectories(GroupWalkConfig(params, parse_generators(read_file(o.generators), o.q)), s);
      data.config.insert(data.config.begin(), {"generator_set", "file"});
    }
  } else if (o.kind == "reduced") {
    if (!o.kernel.empty()) {
      const BuildingParams params = building(o.rank, o.q);
      if (o.coordinate < 1 || o.coordinate > o.rank) throw std::invalid_argument("--coordinate is out of range");
      const auto fk = factor_kernel(parse_kernel(read_file(o.kernel), params));
      data = sample_trajectories(
          ReducedChainConfig::from_factor(o.q, fk, static_cast<std::size_t>(o.coordinate - 1)), s);
    } else {
      const Rational up = parse_rational(o.p_up);
      const Rational down = o.p_down.empty() ? up : parse_rational(o.p_down);
      data = sample_trajectories(ReducedChainConfig(o.q, up, Rational(1) - up - down, down), s);
    }
  } else {
    throw std::invalid_argument("unknown walk '" + o.kind + "'");
  }
  if (o.stamp) data.config.emplace_back("stamp", utc_timestamp());
  write_csv(out, data);
}

void analyze(std::ostream& out, const AnalyzeOptions& o) {
  std::istringstream in(read_file(o.in));
  const Dataset data = read_csv(in);
  const RootSystem rs = build_root_system(RootKind::A, data.rank);
  const int q = data.config_value("q").empty() ? 0 : std::stoi(data.config_value("q"));

  const Estimate lam = empirical_speed(data);
  const Estimate mu = empirical_busemann_drift(data);

  Json j;
  j["schema"] = "weylwalk-report v1";
  if (o.stamp) j["stamp"] = utc_timestamp();
  j["kind"] = to_string(data.kind);
  j["rank"] = data.rank;
  j["q"] = q;
  j["trajectories"] = lam.trajectories;
  j["steps"] = lam.n;
  j["lambda_hat"] = doubles(lam.mean);
  j["lambda_se"] = doubles(lam.se);
  j["mu_hat"] = doubles(mu.mean);
  j["mu_se"] = doubles(mu.se);

  // Target speed: given, from the recorded kernel, or the estimate itself.
  std::vector<double> target;
  std::string source;
  std::optional<TheoreticalDrift> theory;
  if (!o.lambda.empty()) {
    target = to_doubles(parse_coweight(o.lambda, data.rank));
    source = "argument";
  } else if (data.kind == WalkKind::Iso && !data.config_value("kernel").empty()) {
    const BuildingParams params = building(data.rank, q);
    theory = theoretical_drift(rs, factor_kernel(parse_kernel(data.config_value("kernel"), params)));
    source = "kernel";
  } else if (data.kind == WalkKind::Group && data.config_value("generator_set") == "neighbours") {
    theory = theoretical_drift(rs, factor_kernel(SemiIsotropicKernel::isotropic(building(data.rank, q))));
    source = "kernel";
  } else if (data.kind == WalkKind::Reduced) {
    FactorKernel fk;
    fk[LatticeVector{Rational(1)}] = parse_rational(data.config_value("p_up"));
    fk[LatticeVector{Rational(-1)}] = parse_rational(data.config_value("p_down"));
    theory = theoretical_drift(rs, fk);
    source = "kernel";
  } else {
    target = lam.mean;
    source = "estimate";
  }
  if (theory) {
    target = to_doubles(theory->lambda);
    j["theoretical_mu"] = rationals(theory->mu);
    j["theoretical_lambda"] = rationals(theory->lambda);
  }
  j["target_lambda"] = doubles(target);
  j["target_source"] = source;

  const auto lam_tol = tolerances(lam);
  const auto mu_tol = tolerances(mu);
  double orbit_tol = 0;
  for (std::size_t i = 0; i < lam_tol.size(); ++i) orbit_tol = std::max({orbit_tol, lam_tol[i], mu_tol[i]});
  const OrbitMatch orbit = check_orbit_relation(rs, lam.mean, mu.mean, orbit_tol);
  j["orbit_witness_word"] = to_string(orbit.witness);
  j["orbit_distance"] = orbit.distance;
  j["orbit_tolerance"] = orbit_tol;

  double res_tol = 0;
  for (double t : lam_tol) res_tol = std::max(res_tol, t);
  const RegularityResiduals reg = regularity_residuals(rs, data, target, std::max(0.03, res_tol));
  Json residuals = Json::array();
  for (const Residual& r : reg.residuals) residuals.push_back({{"n", r.n}, {"value", r.value}});
  j["residuals"] = residuals;
  j["residual_tolerance"] = std::max(0.03, res_tol);
  j["step_probe"] = {{"max_step", reg.steps.max_step}, {"limit", reg.steps.limit}, {"pairs", reg.steps.pairs},
                     {"ok", reg.steps.ok}};
  const ConditionCheck c2 = check_condition2(rs, data, target);
  const ConditionCheck c3 = check_condition3(rs, data, target);
  j["pass"] = {{"orbit_relation", orbit.pass},
               {"residuals", reg.pass},
               {"condition2", c2.pass},
               {"condition3", c3.pass},
               {"conditions_agree", c2.pass == c3.pass}};
  j["condition2"] = {{"deviation", c2.deviation}, {"witness", to_string(c2.witness)}};
  j["condition3"] = {{"deviation", c3.deviation}};

  if (data.kind == WalkKind::Reduced) {
    const EndConvergenceReport e = end_convergence_stats(data, o.threshold);
    j["end_convergence"] = {{"runs", e.runs},
                            {"hits", e.hits},
                            {"mean_z_at_hit", e.mean_z},
                            {"se_z_at_hit", e.se_z},
                            {"e_i", e.expected_z},
                            {"down_catch_fraction", e.down_catch_fraction},
                            {"max_y", e.max_y},
                            {"threshold", e.threshold},
                            {"fraction_reaching_threshold", e.fraction_reaching},
                            {"violations", e.violations},
                            {"final_y", e.final_y}};
  }
  write_json(out, j);
}

}  // namespace weylwalk::cli
