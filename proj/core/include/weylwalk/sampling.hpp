#pragma once

// Parallel, reproducible trajectory sampling. Trajectory j uses the stream
// derive_seed(base_seed, j) and its own walk state; workers pull trajectory
// indices from a shared counter and results are merged in index order, so
// the output does not depend on the number of threads.

#include "weylwalk/dataset.hpp"
#include "weylwalk/walks.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace weylwalk {

struct SamplingOptions {
  std::uint64_t steps = 0;
  std::uint64_t trajectories = 1;
  std::uint64_t base_seed = 0;
  // 0 means only the endpoints 0 and steps.
  std::uint64_t checkpoint_every = 0;
  // Global index of the first trajectory, for splitting runs into pieces.
  std::uint64_t first_trajectory = 0;
  // 0 means the default worker count.
  unsigned threads = 0;

  void validate() const;
};

// {0, k, 2k, ..., steps} together with t + 1 for every such t < steps. The
// consecutive pairs feed the step-size probe.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t steps, std::uint64_t every);

// hardware_concurrency, capped by WEYLWALK_THREADS and by the task count.
unsigned default_worker_count(std::size_t tasks);

// Runs task(k) for k in [0, count) on `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

Dataset sample_trajectories(const SemiIsotropicKernel& kernel, const SamplingOptions& options);
Dataset sample_trajectories(const GroupWalkConfig& config, const SamplingOptions& options);
Dataset sample_trajectories(const ReducedChainConfig& config, const SamplingOptions& options);

}  // namespace weylwalk
