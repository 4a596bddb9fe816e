#include "text.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace weylwalk::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

LatticeVector parse_coweight(std::string_view text, int rank) {
  const std::string s = trim(text);
  const auto r = static_cast<std::size_t>(rank);
  auto bad = [&] { return std::invalid_argument("cannot read coweight '" + s + "'"); };
  if (s.empty()) throw bad();
  if (s == "0") return LatticeVector(r);
  if (s.find('w') == std::string::npos) {
    std::vector<Rational> coords;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) coords.push_back(parse_rational(trim(part)));
    if (coords.size() != r) throw std::invalid_argument("coweight '" + s + "' needs " + std::to_string(r) + " coordinates");
    return LatticeVector(std::move(coords));
  }
  LatticeVector out(r);
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == '+') {
      ++pos;
      continue;
    }
    std::int64_t coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      coeff = std::stoll(s.substr(pos, end - pos));
      pos = end;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (pos >= s.size() || s[pos] != 'w') throw bad();
    ++pos;
    std::size_t end = pos;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    if (end == pos) throw bad();
    const auto i = std::stoul(s.substr(pos, end - pos));
    if (i < 1 || i > r) throw std::invalid_argument("fundamental coweight w" + std::to_string(i) + " is out of range");
    out[i - 1] += Rational(coeff);
    pos = end;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool height_less(const RootSystem& rs, const LatticeVector& a, const LatticeVector& b) {
  Rational ha(0), hb(0);
  for (const Root& root : rs.positive_roots()) {
    ha += rs.pairing(a, root);
    hb += rs.pairing(b, root);
  }
  if (ha != hb) return ha < hb;
  return a < b;
}

}  // namespace weylwalk::cli
