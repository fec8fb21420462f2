#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ofuglb::harness {

struct RunResultRow {
  int repeat_id = 0;
  std::size_t t = 0;
  std::string variant;
  double cum_regret = 0.0;
  double radius_sq = 0.0;
  std::size_t arm_index = 0;
  bool contains_star = false;
  bool fallback_flag = false;

  bool operator==(const RunResultRow&) const = default;
};

inline constexpr const char* kCsvHeader =
    "repeat_id,t,variant,cum_regret,radius_sq,arm_index,contains_star,fallback_flag";

/// Orders by (variant, repeat_id, t).
void sort_rows(std::vector<RunResultRow>& rows);

std::string format_csv(const std::vector<RunResultRow>& rows);
std::vector<RunResultRow> parse_csv(const std::string& text);

/// I/O failures throw std::runtime_error naming the path.
void write_csv(const std::vector<RunResultRow>& rows, const std::filesystem::path& path);
std::vector<RunResultRow> read_csv(const std::filesystem::path& path);

struct CoverageSummary {
  std::string variant;
  int repeats = 0;
  /// Fraction of repeats whose set missed theta_star at some round.
  double miss_fraction = 0.0;
  std::optional<std::size_t> earliest_miss;
  double mean_final_radius = 0.0;
};

/// One summary per variant, in variant order.
std::vector<CoverageSummary> coverage_report(const std::vector<RunResultRow>& rows);

}  // namespace ofuglb::harness
