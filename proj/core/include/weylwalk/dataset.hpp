#pragma once

// Trajectory datasets: checkpoint records plus per-trajectory summaries of
// reduced chains, with a versioned plain-text CSV form.
//
//   # weylwalk-dataset v1
//   # kind=iso
//   # <key>=<value>            (run configuration, in order)
//   # summary traj=0 hits=... (reduced chains only)
//   traj,n,h_1,...,h_r,lam_1,...,lam_r[,xbar,y]
//   ...
//
// Rationals are written as "p/q".

#include "weylwalk/coxeter.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace weylwalk {

enum class WalkKind { Group, Iso, Reduced };

std::string to_string(WalkKind kind);
WalkKind parse_walk_kind(std::string_view text);

struct Record {
  std::uint64_t traj = 0;
  std::uint64_t n = 0;
  LatticeVector h;    // Busemann value h(X_n)
  LatticeVector lam;  // d(o, X_n)
  std::int64_t xbar = 0;
  std::int64_t y = 0;

  friend bool operator==(const Record&, const Record&) = default;
};

struct ReducedSummary {
  std::uint64_t traj = 0;
  std::uint64_t steps = 0;
  std::uint64_t hits = 0;
  // Increments of Xbar at hitting times.
  std::uint64_t up_at_hit = 0;
  std::uint64_t down_at_hit = 0;
  // Z at hitting times.
  std::uint64_t z_up = 0;
  std::uint64_t z_down = 0;
  std::int64_t y_final = 0;
  std::int64_t xbar_final = 0;
  // Steps after which y < xbar.
  std::uint64_t violations = 0;

  friend bool operator==(const ReducedSummary&, const ReducedSummary&) = default;
};

struct Dataset {
  WalkKind kind = WalkKind::Iso;
  int rank = 1;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Record> records;
  std::vector<ReducedSummary> summaries;

  // Value of a configuration key, or empty.
  std::string config_value(const std::string& key) const;
  std::vector<std::uint64_t> trajectories() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

void write_csv(std::ostream& out, const Dataset& data);
// Throws std::invalid_argument on malformed input.
Dataset read_csv(std::istream& in);

// Concatenates datasets of the same kind, rank and configuration (apart from
// keys describing the trajectory range); records stay ordered by trajectory.
// Throws std::invalid_argument if a trajectory appears in both.
Dataset merge_datasets(const Dataset& a, const Dataset& b);

}  // namespace weylwalk
