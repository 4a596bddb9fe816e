#include "weylwalk/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace weylwalk {

void SamplingOptions::validate() const {
  if (trajectories == 0) throw std::invalid_argument("need at least one trajectory");
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t steps, std::uint64_t every) {
  if (every == 0 || every > steps) every = std::max<std::uint64_t>(steps, 1);
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 0; t < steps; t += every) {
    out.push_back(t);
    out.push_back(t + 1);
  }
  out.push_back(steps);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned default_worker_count(std::size_t tasks) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WEYLWALK_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, tasks)));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        task(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

struct TrajectoryResult {
  std::vector<Record> records;
  ReducedSummary summary;
};

template <class Run>
Dataset run_all(WalkKind kind, int rank, std::vector<std::pair<std::string, std::string>> config,
                const SamplingOptions& options, Run run) {
  options.validate();
  const auto schedule = checkpoint_schedule(options.steps, options.checkpoint_every);
  std::vector<TrajectoryResult> results(options.trajectories);
  const unsigned threads = options.threads ? options.threads : default_worker_count(results.size());
  parallel_for(results.size(), threads, [&](std::size_t k) {
    const std::uint64_t traj = options.first_trajectory + k;
    CounterRng rng(derive_seed(options.base_seed, traj));
    results[k] = run(traj, rng, schedule);
  });

  Dataset data;
  data.kind = kind;
  data.rank = rank;
  data.config = std::move(config);
  data.config.emplace_back("steps", std::to_string(options.steps));
  data.config.emplace_back("trajectories", std::to_string(options.trajectories));
  data.config.emplace_back("first_trajectory", std::to_string(options.first_trajectory));
  data.config.emplace_back("seed", std::to_string(options.base_seed));
  data.config.emplace_back("checkpoint_every", std::to_string(options.checkpoint_every));
  for (auto& r : results) {
    data.records.insert(data.records.end(), std::make_move_iterator(r.records.begin()),
                        std::make_move_iterator(r.records.end()));
    if (kind == WalkKind::Reduced) data.summaries.push_back(r.summary);
  }
  return data;
}

Record vertex_record(std::uint64_t traj, std::uint64_t n, const Vertex& x) {
  Record rec;
  rec.traj = traj;
  rec.n = n;
  rec.h = busemann(x);
  rec.lam = distance_from_base(x);
  return rec;
}

std::vector<std::pair<std::string, std::string>> building_config(const BuildingParams& p) {
  return {{"q", std::to_string(p.q)}};
}

}  // namespace

Dataset sample_trajectories(const SemiIsotropicKernel& kernel, const SamplingOptions& options) {
  auto config = building_config(kernel.params());
  std::string classes = format_kernel(kernel);
  while (!classes.empty() && classes.back() == '\n') classes.pop_back();
  for (std::size_t pos; (pos = classes.find('\n')) != std::string::npos;) classes.replace(pos, 1, "; ");
  config.emplace_back("kernel", classes);
  return run_all(WalkKind::Iso, kernel.params().rank, std::move(config), options,
                 [&](std::uint64_t traj, CounterRng& rng, const std::vector<std::uint64_t>& schedule) {
                   TrajectoryResult out;
                   Vertex x = Vertex::base(kernel.params());
                   std::uint64_t n = 0;
                   for (std::uint64_t t : schedule) {
                     for (; n < t; ++n) x = step_semi_isotropic(x, kernel, rng);
                     out.records.push_back(vertex_record(traj, n, x));
                   }
                   return out;
                 });
}

Dataset sample_trajectories(const GroupWalkConfig& walk, const SamplingOptions& options) {
  auto config = building_config(walk.params());
  config.emplace_back("generators", std::to_string(walk.generators().size()));
  return run_all(WalkKind::Group, walk.params().rank, std::move(config), options,
                 [&](std::uint64_t traj, CounterRng& rng, const std::vector<std::uint64_t>& schedule) {
                   TrajectoryResult out;
                   GroupWalkState state = GroupWalkState::identity(walk.params());
                   std::uint64_t n = 0;
                   for (std::uint64_t t : schedule) {
                     for (; n < t; ++n) step_group_walk(state, walk, rng);
                     out.records.push_back(vertex_record(traj, n, state.position()));
                   }
                   return out;
                 });
}

Dataset sample_trajectories(const ReducedChainConfig& chain, const SamplingOptions& options) {
  std::vector<std::pair<std::string, std::string>> config = {
      {"q", std::to_string(chain.q())},
      {"p_up", to_string(chain.p_up())},
      {"p_stay", to_string(chain.p_stay())},
      {"p_down", to_string(chain.p_down())},
  };
  return run_all(WalkKind::Reduced, 1, std::move(config), options,
                 [&](std::uint64_t traj, CounterRng& rng, const std::vector<std::uint64_t>& schedule) {
                   TrajectoryResult out;
                   ReducedChainState state;
                   ReducedSummary& s = out.summary;
                   s.traj = traj;
                   auto record = [&](std::uint64_t n) {
                     Record rec;
                     rec.traj = traj;
                     rec.n = n;
                     rec.h = LatticeVector{Rational(state.xbar)};
                     rec.lam = LatticeVector{Rational(state.xbar < 0 ? -state.xbar : state.xbar)};
                     rec.xbar = state.xbar;
                     rec.y = state.y;
                     out.records.push_back(std::move(rec));
                   };
                   std::uint64_t n = 0;
                   for (std::uint64_t t : schedule) {
                     for (; n < t; ++n) {
                       const ReducedStep step = step_reduced_chain(state, chain, rng);
                       if (step.hit) {
                         ++s.hits;
                         if (step.increment == 1) ++s.up_at_hit;
                         if (step.increment == -1) ++s.down_at_hit;
                         if (step.z == 1) ++s.z_up;
                         if (step.z == -1) ++s.z_down;
                       }
                       if (state.y < state.xbar) ++s.violations;
                     }
                     record(n);
                   }
                   s.steps = n;
                   s.y_final = state.y;
                   s.xbar_final = state.xbar;
                   return out;
                 });
}

}  // namespace weylwalk
