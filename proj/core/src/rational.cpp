#include "weylwalk/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace weylwalk {

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

namespace {

std::int64_t parse_integer(std::string_view text) {
  std::int64_t out = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const auto den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(text.substr(0, slash)), den);
}

}  // namespace weylwalk
