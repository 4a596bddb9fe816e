#pragma once

#include <weylwalk/coxeter.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace weylwalk::cli {

// "w1", "2w1+w2", "0" or explicit coordinates "1,0".
LatticeVector parse_coweight(std::string_view text, int rank);
std::string read_file(const std::string& path);
// Whole-line key=value pairs; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);
std::string utc_timestamp();
// <mu, 2 rho>, then lexicographic.
bool height_less(const RootSystem& rs, const LatticeVector& a, const LatticeVector& b);

}  // namespace weylwalk::cli
