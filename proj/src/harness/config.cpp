#include "ofuglb/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace ofuglb::harness {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

const char* type_name(const json& j) {
  return j.type_name();
}

class Checker {
 public:
  explicit Checker(const std::string& text) : text_(text) {}

  std::vector<std::string>& problems() { return problems_; }

  void fail(const std::vector<std::string>& path, const std::string& what) {
    std::string msg = join(path, ".") + ": " + what;
    if (const auto line = line_of(path)) msg += " (line " + std::to_string(*line) + ")";
    problems_.push_back(std::move(msg));
  }

  const json* field(const json& obj, const std::vector<std::string>& path, bool required) {
    const auto it = obj.find(path.back());
    if (it == obj.end()) {
      if (required) problems_.push_back(join(path, ".") + ": missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::vector<std::string>& path,
                               bool required) {
    const json* v = field(obj, path, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) {
      fail(path, std::string("expected a number, got ") + type_name(*v));
      return std::nullopt;
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
      fail(path, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::int64_t> integer(const json& obj, const std::vector<std::string>& path,
                                      bool required) {
    const json* v = field(obj, path, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_integer()) {
      fail(path, std::string("expected an integer, got ") + type_name(*v));
      return std::nullopt;
    }
    if (v->is_number_unsigned() &&
        v->get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      fail(path, "integer out of range");
      return std::nullopt;
    }
    return v->get<std::int64_t>();
  }

  std::optional<std::string> string(const json& obj, const std::vector<std::string>& path,
                                    bool required) {
    const json* v = field(obj, path, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) {
      fail(path, std::string("expected a string, got ") + type_name(*v));
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<Eigen::VectorXd> vector(const json& v, const std::vector<std::string>& path) {
    if (!v.is_array() || v.empty()) {
      fail(path, "expected a nonempty array of numbers");
      return std::nullopt;
    }
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
        fail(path, "expected a nonempty array of numbers");
        return std::nullopt;
      }
      out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
  }

 private:
  std::optional<std::size_t> line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    for (const std::string& key : path) {
      const std::size_t hit = text_.find('"' + key + '"', pos);
      if (hit == std::string::npos) return std::nullopt;
      pos = hit;
    }
    return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  const std::string& text_;
  std::vector<std::string> problems_;
};

std::string supported_families() { return "Bernoulli, Gaussian, Poisson"; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config:\n  " + join(problems, "\n  ")),
      problems_(std::move(problems)) {}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ConfigError({"malformed JSON near line " + std::to_string(line) + ": " + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});

  Checker c(text);
  ExperimentConfig cfg;

  if (const auto v = c.integer(doc, {"schema_version"}, false); v && *v != kConfigSchemaVersion) {
    c.fail({"schema_version"}, "unsupported version " + std::to_string(*v) + " (expected " +
                                   std::to_string(kConfigSchemaVersion) + ")");
  }

  if (const json* fam = c.field(doc, {"family"}, true)) {
    if (!fam->is_object()) {
      c.fail({"family"}, "expected an object with a \"kind\" field");
    } else if (const auto kind = c.string(*fam, {"family", "kind"}, true)) {
      if (*kind == "Bernoulli") {
        cfg.family = GlmFamily::bernoulli();
      } else if (*kind == "Poisson") {
        cfg.family = GlmFamily::poisson();
      } else if (*kind == "Gaussian") {
        const double sigma = c.number(*fam, {"family", "sigma"}, false).value_or(1.0);
        if (sigma > 0.0) {
          cfg.family = GlmFamily::gaussian(sigma);
        } else {
          c.fail({"family", "sigma"}, "must be positive");
        }
      } else {
        c.fail({"family", "kind"},
               "unknown family \"" + *kind + "\"; supported kinds: " + supported_families());
      }
    }
  }

  if (const auto d = c.integer(doc, {"d"}, true)) {
    if (*d < 1 || *d > 1000) {
      c.fail({"d"}, "must lie in [1, 1000]");
    } else {
      cfg.d = static_cast<int>(*d);
    }
  }
  if (const auto S = c.number(doc, {"S"}, true)) {
    if (!(*S > 0.0)) {
      c.fail({"S"}, "must be positive");
    } else {
      cfg.S = *S;
    }
  }
  if (const auto T = c.integer(doc, {"T"}, true)) {
    if (*T < 1) {
      c.fail({"T"}, "must be >= 1");
    } else {
      cfg.T = static_cast<std::size_t>(*T);
    }
  }
  if (const auto delta = c.number(doc, {"delta_total"}, true)) {
    if (!(*delta > 0.0 && *delta < 1.0)) {
      c.fail({"delta_total"}, "must lie in (0, 1)");
    } else {
      cfg.delta_total = *delta;
    }
  }
  if (const auto repeats = c.integer(doc, {"repeats"}, true)) {
    if (*repeats < 1) {
      c.fail({"repeats"}, "must be >= 1");
    } else {
      cfg.repeats = static_cast<int>(*repeats);
    }
  }
  if (const json* seed = c.field(doc, {"base_seed"}, true)) {
    if (!seed->is_number_integer() || (seed->is_number_integer() && !seed->is_number_unsigned() &&
                                       seed->get<std::int64_t>() < 0)) {
      c.fail({"base_seed"}, "expected a nonnegative integer");
    } else {
      cfg.base_seed = seed->get<std::uint64_t>();
    }
  }

  if (const json* law = c.field(doc, {"arm_law"}, false)) {
    if (!law->is_object()) {
      c.fail({"arm_law"}, "expected an object");
    } else {
      if (const auto mode = c.string(*law, {"arm_law", "mode"}, false)) {
        if (const auto m = arm_set_mode_from_string(*mode)) {
          cfg.arm_law.mode = *m;
        } else {
          c.fail({"arm_law", "mode"},
                 "unknown mode \"" + *mode + "\"; supported: FixedUniform, VaryingUniform, Explicit");
        }
      }
      if (const auto K = c.integer(*law, {"arm_law", "K"}, false)) {
        if (*K < 1 || *K > 100000) {
          c.fail({"arm_law", "K"}, "must lie in [1, 100000]");
        } else {
          cfg.arm_law.K = static_cast<int>(*K);
        }
      }
      if (const json* arms = c.field(*law, {"arm_law", "arms"}, false)) {
        if (!arms->is_array() || arms->empty()) {
          c.fail({"arm_law", "arms"}, "expected a nonempty array of arm vectors");
        } else {
          for (const json& a : *arms) {
            const auto v = c.vector(a, {"arm_law", "arms"});
            if (!v) break;
            if (v->size() != cfg.d) {
              c.fail({"arm_law", "arms"}, "arm has dimension " + std::to_string(v->size()) +
                                              ", expected d = " + std::to_string(cfg.d));
              break;
            }
            if (v->norm() > 1.0 + 1e-12) {
              c.fail({"arm_law", "arms"}, "arm lies outside the unit ball");
              break;
            }
            cfg.arm_law.arms.push_back(*v);
          }
        }
      }
      if (cfg.arm_law.mode == ArmSetMode::Explicit && !law->contains("arms")) {
        c.fail({"arm_law", "arms"}, "required when mode is Explicit");
      }
    }
  }

  if (const json* variants = c.field(doc, {"variants"}, false)) {
    if (!variants->is_array() || variants->empty()) {
      c.fail({"variants"}, "expected a nonempty array of variant names");
    } else {
      cfg.variants.clear();
      for (const json& v : *variants) {
        const auto parsed = v.is_string() ? variant_from_string(v.get<std::string>()) : std::nullopt;
        if (!parsed) {
          c.fail({"variants"}, "unknown variant " + v.dump() + "; supported: OFUGLB, OFUGLB-e, EpsGreedy");
          continue;
        }
        if (std::find(cfg.variants.begin(), cfg.variants.end(), *parsed) != cfg.variants.end()) {
          c.fail({"variants"}, "duplicate variant " + v.dump());
          continue;
        }
        cfg.variants.push_back(*parsed);
      }
    }
  }

  if (const json* lambda = c.field(doc, {"lambda"}, false); lambda && !lambda->is_null()) {
    if (const auto v = c.number(doc, {"lambda"}, false)) {
      if (!(*v > 0.0)) {
        c.fail({"lambda"}, "must be positive");
      } else {
        cfg.lambda = *v;
      }
    }
  }
  if (const auto eps = c.number(doc, {"epsilon"}, false)) {
    if (!(*eps >= 0.0 && *eps <= 1.0)) {
      c.fail({"epsilon"}, "must lie in [0, 1]");
    } else {
      cfg.epsilon = *eps;
    }
  }
  if (const auto out = c.string(doc, {"output_dir"}, false)) cfg.output_dir = *out;

  if (const json* star = c.field(doc, {"theta_star"}, false)) {
    if (const auto v = c.vector(*star, {"theta_star"})) {
      if (v->size() != cfg.d) {
        c.fail({"theta_star"}, "has dimension " + std::to_string(v->size()) + ", expected d = " +
                                   std::to_string(cfg.d));
      } else {
        cfg.theta_star = *v;
      }
    }
  } else {
    cfg.theta_star = experiment_theta_star(cfg.S, cfg.d);
  }
  if (cfg.theta_star.size() == cfg.d && cfg.theta_star.norm() > cfg.S + 1e-12) {
    c.fail({"theta_star"}, "lies outside the ball of radius S (norm " +
                               std::to_string(cfg.theta_star.norm()) + ")");
  }

  if (!c.problems().empty()) throw ConfigError(std::move(c.problems()));
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot read config file " + path.string()});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

}  // namespace ofuglb::harness
