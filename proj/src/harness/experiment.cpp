#include "ofuglb/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ofuglb/rng.hpp"

namespace ofuglb::harness {

std::uint64_t arm_stream_seed(std::uint64_t base_seed, int repeat_id) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(repeat_id), "arms");
}

std::uint64_t reward_stream_seed(std::uint64_t base_seed, int repeat_id, Variant variant) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(repeat_id), to_string(variant));
}

int default_worker_count() {
  if (const char* env = std::getenv("OFUGLB_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 1024) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Job {
  RepeatOutcome outcome;
  std::vector<RunResultRow> rows;
};

void run_job(const ExperimentConfig& cfg, Job& job) {
  RepeatOutcome& out = job.outcome;
  try {
    const Environment env(cfg.family, cfg.theta_star, ParameterSpace(cfg.d, cfg.S));
    ArmSetGenerator arms(cfg.arm_law, cfg.d, arm_stream_seed(cfg.base_seed, out.repeat_id));
    Rng rng(reward_stream_seed(cfg.base_seed, out.repeat_id, out.variant));
    PolicyConfig pc;
    pc.variant = out.variant;
    pc.delta_total = cfg.delta_total;
    pc.lambda = cfg.lambda;
    pc.epsilon = cfg.epsilon;
    PolicyRun run = run_policy(env, arms, cfg.T, pc, rng);

    const std::string name(to_string(out.variant));
    job.rows.reserve(run.logs.size());
    for (const RoundLog& log : run.logs) {
      job.rows.push_back({.repeat_id = out.repeat_id,
                          .t = log.t,
                          .variant = name,
                          .cum_regret = log.cum_regret,
                          .radius_sq = log.radius_sq,
                          .arm_index = log.arm_index,
                          .contains_star = log.theta_star_contained,
                          .fallback_flag = log.fallback});
      out.fallback_rounds += log.fallback ? 1 : 0;
    }
    out.rounds = run.logs.size();
    out.kappa = compute_kappas(run.logs, env);
    out.final_set = std::move(run.final_set);
  } catch (const std::exception& e) {
    out.error = e.what();
    job.rows.clear();
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers) {
  if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  std::vector<Job> jobs;
  for (const Variant v : cfg.variants) {
    for (int r = 0; r < cfg.repeats; ++r) {
      Job job;
      job.outcome.variant = v;
      job.outcome.repeat_id = r;
      jobs.push_back(std::move(job));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(cfg, jobs[i]);
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), jobs.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  ExperimentResult result;
  for (Job& job : jobs) {
    const RepeatOutcome& o = job.outcome;
    const std::string label =
        std::string(to_string(o.variant)) + " repeat " + std::to_string(o.repeat_id);
    if (!o.error.empty()) {
      result.failures.push_back(label + " aborted: " + o.error);
    } else if (o.rounds > 0 && static_cast<double>(o.fallback_rounds) > 0.01 * static_cast<double>(o.rounds)) {
      result.failures.push_back(label + ": UCB solver fell back in " +
                                std::to_string(o.fallback_rounds) + " of " +
                                std::to_string(o.rounds) + " rounds (limit 1%)");
    }
    result.rows.insert(result.rows.end(), std::make_move_iterator(job.rows.begin()),
                       std::make_move_iterator(job.rows.end()));
    result.outcomes.push_back(std::move(job.outcome));
  }
  sort_rows(result.rows);
  return result;
}

void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result,
                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_csv(result.rows, dir / "results.csv");

  nlohmann::json kappa = {{"schema_version", 1}, {"runs", nlohmann::json::array()}};
  for (const RepeatOutcome& o : result.outcomes) {
    if (!o.error.empty()) continue;
    kappa["runs"].push_back({{"variant", std::string(to_string(o.variant))},
                             {"repeat_id", o.repeat_id},
                             {"kappa_star_T", o.kappa.kappa_star_T},
                             {"kappa_T", o.kappa.kappa_T},
                             {"kappa_X_T", o.kappa.kappa_X_T},
                             {"fallback_rounds", o.fallback_rounds}});
  }
  const auto write_json = [](const nlohmann::json& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
  };
  write_json(kappa, dir / "kappa.json");

  if (cfg.d != 2) return;
  std::filesystem::create_directories(dir / "sets");
  for (const RepeatOutcome& o : result.outcomes) {
    if (!o.final_set) continue;
    const nlohmann::json doc = std::visit([](const auto& s) { return to_json(s); }, *o.final_set);
    write_json(doc, dir / "sets" /
                        (std::string(to_string(o.variant)) + "-" + std::to_string(o.repeat_id) + ".json"));
  }
}

}  // namespace ofuglb::harness
