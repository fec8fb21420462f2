#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ofuglb/harness/config.hpp"
#include "ofuglb/harness/results.hpp"
#include "ofuglb/kappa.hpp"
#include "ofuglb/policy.hpp"

namespace ofuglb::harness {

/// Outcome of one (variant, repeat) run.
struct RepeatOutcome {
  Variant variant = Variant::OFUGLB;
  int repeat_id = 0;
  /// Empty on success.
  std::string error;
  KappaDiagnostics kappa;
  std::size_t fallback_rounds = 0;
  std::size_t rounds = 0;
  std::optional<ConfidenceSet> final_set;
};

struct ExperimentResult {
  std::vector<RunResultRow> rows;
  /// Ordered by (variant as listed in the config, repeat_id).
  std::vector<RepeatOutcome> outcomes;
  /// Aborted repeats and runs whose fallback rate exceeds 1%.
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Seed of the arm stream shared by all variants of a repeat.
std::uint64_t arm_stream_seed(std::uint64_t base_seed, int repeat_id);
/// Seed of the reward/exploration stream of one variant in a repeat.
std::uint64_t reward_stream_seed(std::uint64_t base_seed, int repeat_id, Variant variant);

/// Worker count from OFUGLB_WORKERS, else the hardware concurrency (at least 1).
int default_worker_count();

/// Runs variants x repeats on `workers` threads. Output does not depend on the
/// worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers = 1);

/// Writes results.csv, kappa.json and, for d = 2, sets/<variant>-<repeat>.json
/// into `dir`.
void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result,
                      const std::filesystem::path& dir);

}  // namespace ofuglb::harness
