#include "weylwalk/dataset.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weylwalk {

namespace {

constexpr const char* kMagic = "# weylwalk-dataset v1";

// Keys that legitimately differ between datasets that are merged.
bool is_range_key(const std::string& key) { return key == "trajectories" || key == "first_trajectory"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::int64_t parse_i64(const std::string& s, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  return v;
}

void write_summary(std::ostream& out, const ReducedSummary& s) {
  out << "# summary traj=" << s.traj << " steps=" << s.steps << " hits=" << s.hits
      << " up_at_hit=" << s.up_at_hit << " down_at_hit=" << s.down_at_hit << " z_up=" << s.z_up
      << " z_down=" << s.z_down << " y_final=" << s.y_final << " xbar_final=" << s.xbar_final
      << " violations=" << s.violations << "\n";
}

ReducedSummary parse_summary(const std::string& body) {
  std::map<std::string, std::string> kv;
  std::istringstream in(body);
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad summary field '" + field + "'");
    kv[field.substr(0, eq)] = field.substr(eq + 1);
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(std::string("summary lacks ") + key);
    return it->second;
  };
  ReducedSummary s;
  s.traj = parse_u64(get("traj"), "traj");
  s.steps = parse_u64(get("steps"), "steps");
  s.hits = parse_u64(get("hits"), "hits");
  s.up_at_hit = parse_u64(get("up_at_hit"), "up_at_hit");
  s.down_at_hit = parse_u64(get("down_at_hit"), "down_at_hit");
  s.z_up = parse_u64(get("z_up"), "z_up");
  s.z_down = parse_u64(get("z_down"), "z_down");
  s.y_final = parse_i64(get("y_final"), "y_final");
  s.xbar_final = parse_i64(get("xbar_final"), "xbar_final");
  s.violations = parse_u64(get("violations"), "violations");
  return s;
}

}  // namespace

std::string to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::Group: return "group";
    case WalkKind::Iso: return "iso";
    case WalkKind::Reduced: return "reduced";
  }
  return "?";
}

WalkKind parse_walk_kind(std::string_view text) {
  if (text == "group") return WalkKind::Group;
  if (text == "iso") return WalkKind::Iso;
  if (text == "reduced") return WalkKind::Reduced;
  throw std::invalid_argument("unknown walk kind '" + std::string(text) + "'");
}

std::string Dataset::config_value(const std::string& key) const {
  for (const auto& [k, v] : config)
    if (k == key) return v;
  return {};
}

std::vector<std::uint64_t> Dataset::trajectories() const {
  std::vector<std::uint64_t> out;
  for (const Record& r : records)
    if (out.empty() || out.back() != r.traj) out.push_back(r.traj);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void write_csv(std::ostream& out, const Dataset& data) {
  out << kMagic << "\n";
  out << "# kind=" << to_string(data.kind) << "\n";
  out << "# rank=" << data.rank << "\n";
  for (const auto& [k, v] : data.config) out << "# " << k << "=" << v << "\n";
  for (const ReducedSummary& s : data.summaries) write_summary(out, s);
  out << "traj,n";
  for (int i = 1; i <= data.rank; ++i) out << ",h_" << i;
  for (int i = 1; i <= data.rank; ++i) out << ",lam_" << i;
  if (data.kind == WalkKind::Reduced) out << ",xbar,y";
  out << "\n";
  for (const Record& r : data.records) {
    out << r.traj << ',' << r.n;
    for (const Rational& c : r.h.coords()) out << ',' << to_string(c);
    for (const Rational& c : r.lam.coords()) out << ',' << to_string(c);
    if (data.kind == WalkKind::Reduced) out << ',' << r.xbar << ',' << r.y;
    out << "\n";
  }
}

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw std::invalid_argument("not a weylwalk dataset (missing '" + std::string(kMagic) + "' header)");
  Dataset data;
  bool have_kind = false, have_rank = false, have_columns = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      if (line.starts_with("# summary ")) {
        data.summaries.push_back(parse_summary(line.substr(10)));
      } else if (line.starts_with("# ")) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad header line");
        const std::string key = line.substr(2, eq - 2);
        const std::string value = line.substr(eq + 1);
        if (key == "kind") {
          data.kind = parse_walk_kind(value);
          have_kind = true;
        } else if (key == "rank") {
          data.rank = static_cast<int>(parse_u64(value, "rank"));
          if (data.rank < 1) throw std::invalid_argument("rank must be positive");
          have_rank = true;
        } else {
          data.config.emplace_back(key, value);
        }
      } else if (!have_columns) {
        if (!have_kind || !have_rank) throw std::invalid_argument("kind and rank must precede the columns");
        std::string expected = "traj,n";
        for (int i = 1; i <= data.rank; ++i) expected += ",h_" + std::to_string(i);
        for (int i = 1; i <= data.rank; ++i) expected += ",lam_" + std::to_string(i);
        if (data.kind == WalkKind::Reduced) expected += ",xbar,y";
        if (line != expected) throw std::invalid_argument("unexpected columns '" + line + "'");
        have_columns = true;
      } else {
        const auto cells = split(line, ',');
        const auto r = static_cast<std::size_t>(data.rank);
        const std::size_t width = 2 + 2 * r + (data.kind == WalkKind::Reduced ? 2 : 0);
        if (cells.size() != width) throw std::invalid_argument("wrong number of cells");
        Record rec;
        rec.traj = parse_u64(cells[0], "traj");
        rec.n = parse_u64(cells[1], "n");
        std::vector<Rational> h, lam;
        for (std::size_t i = 0; i < r; ++i) h.push_back(parse_rational(cells[2 + i]));
        for (std::size_t i = 0; i < r; ++i) lam.push_back(parse_rational(cells[2 + r + i]));
        rec.h = LatticeVector(std::move(h));
        rec.lam = LatticeVector(std::move(lam));
        if (data.kind == WalkKind::Reduced) {
          rec.xbar = parse_i64(cells[2 + 2 * r], "xbar");
          rec.y = parse_i64(cells[3 + 2 * r], "y");
        }
        data.records.push_back(std::move(rec));
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_columns) throw std::invalid_argument("dataset has no column header");
  return data;
}

Dataset merge_datasets(const Dataset& a, const Dataset& b) {
  if (a.kind != b.kind || a.rank != b.rank) throw std::invalid_argument("datasets have different kinds");
  auto fixed = [](const Dataset& d) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& kv : d.config)
      if (!is_range_key(kv.first)) out.push_back(kv);
    return out;
  };
  if (fixed(a) != fixed(b)) throw std::invalid_argument("datasets have different configurations");
  const auto ta = a.trajectories();
  const auto tb = b.trajectories();
  std::set<std::uint64_t> seen(ta.begin(), ta.end());
  for (auto t : tb)
    if (seen.count(t)) throw std::invalid_argument("trajectory " + std::to_string(t) + " appears twice");

  Dataset out;
  out.kind = a.kind;
  out.rank = a.rank;
  out.config = fixed(a);
  out.records = a.records;
  out.records.insert(out.records.end(), b.records.begin(), b.records.end());
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const Record& x, const Record& y) { return x.traj < y.traj; });
  out.summaries = a.summaries;
  out.summaries.insert(out.summaries.end(), b.summaries.begin(), b.summaries.end());
  std::stable_sort(out.summaries.begin(), out.summaries.end(),
                   [](const ReducedSummary& x, const ReducedSummary& y) { return x.traj < y.traj; });
  out.config.emplace_back("trajectories", std::to_string(ta.size() + tb.size()));
  return out;
}

}  // namespace weylwalk
