#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace weylwalk::cli {

void rootsys_show(std::ostream& out, const std::string& type, int rank, bool stamp);

void oracle_decompose(std::ostream& out, int q, const std::string& matrix_json, bool stamp);

// Counts by Busemann offset of the sphere of radius nu around o; with
// basepoints > 0 the counts are recomputed around that many random vertices
// and must agree.
void oracle_ccount(std::ostream& out, int rank, int q, const std::string& nu, std::uint64_t basepoints,
                   std::uint64_t seed, bool stamp);

void building_sphere(std::ostream& out, int rank, int q, const std::string& nu, bool stamp);

struct WalkOptions {
  std::string kind;
  int rank = 1;
  int q = 2;
  std::uint64_t steps = 0;
  std::uint64_t trajectories = 1;
  std::uint64_t seed = 0;
  std::uint64_t checkpoint_every = 0;
  std::uint64_t first_trajectory = 0;
  unsigned threads = 0;
  std::string kernel;
  std::string preset = "isotropic";
  std::string generators;
  std::string p_up = "1/2";
  std::string p_down;
  int coordinate = 1;
  bool stamp = false;
};

void walk_command(std::ostream& out, const WalkOptions& options);

struct AnalyzeOptions {
  std::string in;
  std::string lambda;
  std::int64_t threshold = 50;
  bool stamp = false;
};

void analyze(std::ostream& out, const AnalyzeOptions& options);

}  // namespace weylwalk::cli
