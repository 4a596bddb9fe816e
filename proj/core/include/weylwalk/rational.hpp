#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace weylwalk {

// Mixed comparisons such as `r == 0` recurse inside boost::rational under
// C++20 rewritten operators; compare numerators or Rational values instead.
using Rational = boost::rational<std::int64_t>;

// "p/q" for non-integers, "p" otherwise.
std::string to_string(const Rational& value);

// Accepts "p", "-p", "p/q".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& value) {
  return boost::rational_cast<double>(value);
}

}  // namespace weylwalk
