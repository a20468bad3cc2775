#include "rfsvm/dataset.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace rfsvm {

Dataset::Dataset(std::vector<Eigen::VectorXd> samples, std::vector<int> labels)
    : samples_(std::move(samples)), labels_(std::move(labels)) {
  if (samples_.empty()) {
    throw std::invalid_argument("Dataset: at least one sample required");
  }
  if (samples_.size() != labels_.size()) {
    throw std::invalid_argument("Dataset: sample/label count mismatch");
  }
  dim_ = samples_.front().size();
  if (dim_ == 0) {
    throw std::invalid_argument("Dataset: samples must have at least one feature");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].size() != dim_) {
      throw std::invalid_argument("Dataset: inconsistent dimension at sample " +
                                  std::to_string(i));
    }
    if (!samples_[i].allFinite()) {
      throw std::invalid_argument("Dataset: non-finite entry at sample " +
                                  std::to_string(i));
    }
    if (labels_[i] != 1 && labels_[i] != -1) {
      throw std::invalid_argument("Dataset: label must be +1 or -1 at sample " +
                                  std::to_string(i));
    }
  }
}

}  // namespace rfsvm
