#pragma once

#include <Eigen/Core>
#include <vector>

namespace rfsvm {

// Dense binary classification data with labels in {-1, +1}. All samples share
// one feature dimension and all entries are finite; the constructor enforces
// both.
class Dataset {
 public:
  Dataset(std::vector<Eigen::VectorXd> samples, std::vector<int> labels);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return samples_.size(); }
  const Eigen::VectorXd& sample(std::size_t i) const { return samples_[i]; }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<Eigen::VectorXd>& samples() const { return samples_; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  std::vector<Eigen::VectorXd> samples_;
  std::vector<int> labels_;
  Eigen::Index dim_ = 0;
};

}  // namespace rfsvm
