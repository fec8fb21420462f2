#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ofuglb/harness/config.hpp"
#include "ofuglb/harness/experiment.hpp"
#include "ofuglb/harness/plot.hpp"
#include "ofuglb/harness/results.hpp"

namespace {

using namespace ofuglb;
using namespace ofuglb::harness;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

void print_coverage(const std::vector<RunResultRow>& rows) {
  std::printf("%-10s %8s %13s %14s %17s\n", "variant", "repeats", "miss_fraction", "earliest_miss",
              "mean_final_radius");
  for (const CoverageSummary& s : coverage_report(rows)) {
    const std::string earliest = s.earliest_miss ? std::to_string(*s.earliest_miss) : "-";
    std::printf("%-10s %8d %13.4f %14s %17.6g\n", s.variant.c_str(), s.repeats, s.miss_fraction,
                earliest.c_str(), s.mean_final_radius);
  }
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) {
      throw std::invalid_argument("--theta-star: '" + cell + "' is not a number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("--theta-star is empty");
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

int cmd_run(const std::string& config_path, std::string out_dir, const std::optional<std::uint64_t>& seed,
            const std::optional<int>& workers) {
  ExperimentConfig cfg = parse_config(config_path);
  if (seed) cfg.base_seed = *seed;
  if (out_dir.empty()) out_dir = cfg.output_dir;
  if (out_dir.empty()) {
    std::cerr << "error: no output directory (pass --out or set output_dir)\n";
    return kInvalid;
  }
  const int n = workers.value_or(default_worker_count());
  if (n < 1) {
    std::cerr << "error: --workers must be >= 1\n";
    return kInvalid;
  }
  const ExperimentResult result = run_experiment(cfg, n);
  write_experiment(cfg, result, out_dir);
  if (!result.rows.empty()) {
    plot_regret(result.rows, std::filesystem::path(out_dir) / "regret.svg");
    print_coverage(result.rows);
  }
  if (!result.ok()) {
    for (const std::string& f : result.failures) std::cerr << "error: " << f << '\n';
    return kRuntime;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence sequences and optimistic bandits for generalized linear models"};
  app.require_subcommand(1);

  std::string config_path, out_dir, csv_path, svg_path, set_path, theta_text;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;

  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--seed", seed, "Override base_seed");
  run->add_option("--workers", workers, "Worker threads (default: $OFUGLB_WORKERS or cores)");

  auto* regret = app.add_subcommand("plot-regret", "Plot mean cumulative regret from a results CSV");
  regret->add_option("--csv", csv_path, "results.csv")->required();
  regret->add_option("--out", svg_path, "Output SVG")->required();

  auto* cs = app.add_subcommand("plot-cs", "Plot a 2-D confidence set written by run");
  cs->add_option("--set", set_path, "Set JSON")->required();
  cs->add_option("--theta-star", theta_text, "True parameter, comma separated")->required();
  cs->add_option("--out", svg_path, "Output SVG")->required();

  auto* cov = app.add_subcommand("coverage", "Coverage summary of a results CSV");
  cov->add_option("--csv", csv_path, "results.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, seed, workers);
    if (*regret) {
      plot_regret(read_csv(csv_path), svg_path);
      return kOk;
    }
    if (*cs) {
      const Eigen::VectorXd theta = parse_vector(theta_text);
      std::ifstream in(set_path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot read " + set_path);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(set_path + ": " + e.what());
      }
      plot_cs_boundary(doc, theta, svg_path);
      return kOk;
    }
    if (*cov) {
      print_coverage(read_csv(csv_path));
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kInvalid;
}
