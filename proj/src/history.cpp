#include "ofuglb/history.hpp"

#include <cmath>
#include <stdexcept>

namespace ofuglb {

History::History(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("History dimension must be positive");
}

void History::append(const Eigen::VectorXd& arm, double reward) {
  if (arm.size() != dim_) throw std::invalid_argument("arm dimension does not match history");
  if (!(arm.norm() <= 1.0 + 1e-12)) throw std::invalid_argument("arm norm exceeds 1");
  if (!std::isfinite(reward)) throw std::invalid_argument("reward must be finite");
  arms_.insert(arms_.end(), arm.data(), arm.data() + dim_);
  rewards_.push_back(reward);
}

Observation History::at(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("history index out of range");
  Observation obs;
  obs.arm = Eigen::Map<const Eigen::VectorXd>(arms_.data() + i * dim_, dim_);
  obs.reward = rewards_[i];
  return obs;
}

History::DesignMap History::design() const {
  return DesignMap(arms_.data(), static_cast<Eigen::Index>(size()), dim_);
}

History::RewardMap History::rewards() const {
  return RewardMap(rewards_.data(), static_cast<Eigen::Index>(size()));
}

History History::prefix(std::size_t n) const {
  if (n > size()) throw std::out_of_range("prefix longer than history");
  History out(dim_);
  out.arms_.assign(arms_.begin(), arms_.begin() + static_cast<std::ptrdiff_t>(n * dim_));
  out.rewards_.assign(rewards_.begin(), rewards_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

}  // namespace ofuglb
