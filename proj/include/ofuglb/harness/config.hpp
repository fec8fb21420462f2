#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ofuglb/arms.hpp"
#include "ofuglb/family.hpp"
#include "ofuglb/policy.hpp"

namespace ofuglb::harness {

inline constexpr int kConfigSchemaVersion = 1;

struct ExperimentConfig {
  GlmFamily family = GlmFamily::bernoulli();
  int d = 2;
  double S = 1.0;
  std::size_t T = 1;
  double delta_total = 0.05;
  ArmSetLaw arm_law;
  std::vector<Variant> variants{Variant::OFUGLB, Variant::OFUGLB_e};
  int repeats = 1;
  std::uint64_t base_seed = 0;
  std::optional<double> lambda;
  double epsilon = 0.05;
  /// Defaults to ((S - 1) / sqrt(d)) * 1.
  Eigen::VectorXd theta_star;
  std::string output_dir;
};

/// Every problem found in a config document, one message per violation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses and validates a JSON config. Messages name the field and, when the
/// key appears in the text, its line.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::filesystem::path& path);

}  // namespace ofuglb::harness
