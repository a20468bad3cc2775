#pragma once

#include <iosfwd>
#include <string>

#include "rfsvm/dataset.hpp"
#include "rfsvm/solver.hpp"

namespace rfsvm {

struct LibsvmOptions {
  // Accept labels {0, 1} and remap 0 to -1; otherwise labels must be +-1.
  bool remap01 = false;
};

struct CsvOptions {
  // Zero-based index of the label column.
  int label_column = 0;
  bool has_header = false;
  bool remap01 = false;
};

// Sparse index:value rows, 1-based strictly ascending indices; the feature
// dimension is the largest index seen. Throws DataError with the offending
// line number on malformed input.
Dataset parse_libsvm(std::istream& in, const LibsvmOptions& opts = {});
Dataset parse_libsvm_file(const std::string& path, const LibsvmOptions& opts = {});

// Numeric comma-separated rows of fixed width; one column holds the label.
Dataset parse_csv(std::istream& in, const CsvOptions& opts = {});
Dataset parse_csv_file(const std::string& path, const CsvOptions& opts = {});

// Two columns: update_index, objective.
void write_trace_csv(std::ostream& out, const TrainingTrace& trace);
void write_trace_csv_file(const std::string& path, const TrainingTrace& trace);

}  // namespace rfsvm
