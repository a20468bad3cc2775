#pragma once

#include <cstdint>
#include <string>

#include "rfsvm/objective.hpp"

namespace rfsvm {

inline constexpr int kModelFormatVersion = 1;

// Training metadata stored alongside the weights.
struct TrainingMeta {
  double lambda = 0.0;
  std::string method;
  int epochs = 0;
  std::uint64_t seed = 0;
};

struct ModelFile {
  RobustClassifier classifier;
  TrainingMeta meta;
};

// JSON with an explicit format_version. Doubles are written with shortest
// round-trip precision, so save followed by load reproduces every weight
// bitwise. Unknown top-level fields and version mismatches are rejected with
// ModelIoError rather than silently ignored.
std::string model_to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);

void save_model(const std::string& path, const ModelFile& model);
ModelFile load_model(const std::string& path);

}  // namespace rfsvm
