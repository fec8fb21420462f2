#include "ofuglb/harness/results.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ofuglb::harness {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

unsigned long long parse_unsigned(const std::string& s, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

bool parse_flag(const std::string& s, std::size_t line) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw std::runtime_error("csv line " + std::to_string(line) + ": bad flag '" + s + "'");
}

}  // namespace

void sort_rows(std::vector<RunResultRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const RunResultRow& a, const RunResultRow& b) {
    return std::tie(a.variant, a.repeat_id, a.t) < std::tie(b.variant, b.repeat_id, b.t);
  });
}

std::string format_csv(const std::vector<RunResultRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const RunResultRow& r : rows) {
    out += std::to_string(r.repeat_id);
    out += ',';
    out += std::to_string(r.t);
    out += ',';
    out += r.variant;
    out += ',';
    out += format_double(r.cum_regret);
    out += ',';
    out += format_double(r.radius_sq);
    out += ',';
    out += std::to_string(r.arm_index);
    out += r.contains_star ? ",1" : ",0";
    out += r.fallback_flag ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

std::vector<RunResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("csv: header must be exactly '" + std::string(kCsvHeader) + "'");
  }
  std::vector<RunResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 8 fields, got " +
                               std::to_string(cells.size()));
    }
    RunResultRow r;
    r.repeat_id = static_cast<int>(parse_unsigned(cells[0], line_no));
    r.t = parse_unsigned(cells[1], line_no);
    r.variant = cells[2];
    r.cum_regret = parse_double(cells[3], line_no);
    r.radius_sq = parse_double(cells[4], line_no);
    r.arm_index = parse_unsigned(cells[5], line_no);
    r.contains_star = parse_flag(cells[6], line_no);
    r.fallback_flag = parse_flag(cells[7], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_csv(const std::vector<RunResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::string text = format_csv(rows);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<RunResultRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_csv(text.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::vector<CoverageSummary> coverage_report(const std::vector<RunResultRow>& rows) {
  struct RepeatState {
    bool missed = false;
    std::size_t last_t = 0;
    double last_radius = 0.0;
  };
  std::map<std::string, std::map<int, RepeatState>> by_variant;
  std::map<std::string, std::optional<std::size_t>> earliest;
  for (const RunResultRow& r : rows) {
    RepeatState& s = by_variant[r.variant][r.repeat_id];
    if (r.t >= s.last_t) {
      s.last_t = r.t;
      s.last_radius = r.radius_sq;
    }
    if (!r.contains_star) {
      s.missed = true;
      auto& e = earliest[r.variant];
      if (!e || r.t < *e) e = r.t;
    }
  }
  std::vector<CoverageSummary> out;
  for (const auto& [variant, repeats] : by_variant) {
    CoverageSummary s;
    s.variant = variant;
    s.repeats = static_cast<int>(repeats.size());
    int misses = 0;
    double radius = 0.0;
    for (const auto& [id, state] : repeats) {
      misses += state.missed ? 1 : 0;
      radius += state.last_radius;
    }
    s.miss_fraction = static_cast<double>(misses) / s.repeats;
    s.mean_final_radius = radius / s.repeats;
    s.earliest_miss = earliest[variant];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ofuglb::harness
