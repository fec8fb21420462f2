#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace ofuglb {

struct Observation {
  Eigen::VectorXd arm;
  double reward = 0.0;
};

/// Append-only record of (arm, reward) pairs. Arms are stored row-major in one
/// contiguous buffer so the design matrix can be viewed without copying.
class History {
 public:
  using DesignMap =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using RewardMap = Eigen::Map<const Eigen::VectorXd>;

  explicit History(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return rewards_.size(); }
  bool empty() const { return rewards_.empty(); }
  /// Round index t: the next observation would be the t-th.
  std::size_t round() const { return size() + 1; }

  /// Throws std::invalid_argument on a dimension mismatch or an arm with
  /// norm above 1 + 1e-12.
  void append(const Eigen::VectorXd& arm, double reward);
  void append(const Observation& obs) { append(obs.arm, obs.reward); }

  Observation at(std::size_t i) const;
  /// n x d design matrix.
  DesignMap design() const;
  RewardMap rewards() const;

  /// First n observations.
  History prefix(std::size_t n) const;

 private:
  int dim_;
  std::vector<double> arms_;
  std::vector<double> rewards_;
};

}  // namespace ofuglb
