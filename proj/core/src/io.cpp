#include "rfsvm/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rfsvm/errors.hpp"

namespace rfsvm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  // from_chars does not accept an explicit plus sign
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
    if (s.empty() || s.front() == '-' || s.front() == '+') return false;
  }
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

int parse_label(double v, bool remap01, std::size_t line) {
  if (v == 1.0) return 1;
  if (v == -1.0) return -1;
  if (remap01 && v == 0.0) return -1;
  std::ostringstream msg;
  msg << "line " << line << ": label must be " << (remap01 ? "0, 1" : "+1")
      << " or -1";
  throw DataError(msg.str());
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Dataset parse_libsvm(std::istream& in, const LibsvmOptions& opts) {
  std::vector<std::vector<std::pair<std::int64_t, double>>> rows;
  std::vector<int> labels;
  std::int64_t max_index = 0;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    std::istringstream tokens{std::string(line)};
    std::string tok;
    tokens >> tok;
    double labval = 0.0;
    if (!parse_double(tok, labval)) fail(lineno, "unreadable label '" + tok + "'");
    labels.push_back(parse_label(labval, opts.remap01, lineno));

    std::vector<std::pair<std::int64_t, double>> row;
    std::int64_t prev = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        fail(lineno, "expected index:value, got '" + tok + "'");
      }
      std::int64_t index = 0;
      {
        const std::string_view is = std::string_view(tok).substr(0, colon);
        auto [ptr, ec] = std::from_chars(is.data(), is.data() + is.size(), index);
        if (ec != std::errc{} || ptr != is.data() + is.size()) {
          fail(lineno, "unreadable feature index in '" + tok + "'");
        }
      }
      if (index < 1) fail(lineno, "feature indices are 1-based");
      if (index <= prev) fail(lineno, "feature indices must be strictly ascending");
      double value = 0.0;
      if (!parse_double(std::string_view(tok).substr(colon + 1), value)) {
        fail(lineno, "unreadable feature value in '" + tok + "'");
      }
      row.emplace_back(index, value);
      prev = index;
      max_index = std::max(max_index, index);
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw DataError("empty dataset");
  if (max_index == 0) throw DataError("dataset has no features");

  std::vector<Eigen::VectorXd> samples;
  samples.reserve(rows.size());
  for (const auto& row : rows) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(max_index);
    for (const auto& [index, value] : row) x[index - 1] = value;
    samples.push_back(std::move(x));
  }
  return Dataset(std::move(samples), std::move(labels));
}

Dataset parse_csv(std::istream& in, const CsvOptions& opts) {
  if (opts.label_column < 0) {
    throw std::invalid_argument("parse_csv: label_column must be >= 0");
  }
  std::vector<Eigen::VectorXd> samples;
  std::vector<int> labels;
  std::size_t columns = 0;

  std::string raw;
  std::size_t lineno = 0;
  bool header_pending = opts.has_header;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }

    std::vector<double> cells;
    std::size_t start = 0;
    const std::string text(line);
    while (true) {
      const std::size_t comma = text.find(',', start);
      const std::string_view cell =
          std::string_view(text).substr(start, comma == std::string::npos
                                                   ? std::string::npos
                                                   : comma - start);
      double v = 0.0;
      if (!parse_double(cell, v)) {
        fail(lineno, "unreadable number '" + std::string(trim(cell)) + "'");
      }
      cells.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }

    if (columns == 0) {
      columns = cells.size();
      if (columns < 2) fail(lineno, "need a label column and at least one feature");
      if (static_cast<std::size_t>(opts.label_column) >= columns) {
        fail(lineno, "label column " + std::to_string(opts.label_column) +
                         " out of range for " + std::to_string(columns) +
                         " columns");
      }
    } else if (cells.size() != columns) {
      fail(lineno, "expected " + std::to_string(columns) + " columns, got " +
                       std::to_string(cells.size()));
    }

    labels.push_back(parse_label(cells[opts.label_column], opts.remap01, lineno));
    Eigen::VectorXd x(static_cast<Eigen::Index>(columns - 1));
    Eigen::Index k = 0;
    for (std::size_t c = 0; c < columns; ++c) {
      if (c == static_cast<std::size_t>(opts.label_column)) continue;
      x[k++] = cells[c];
    }
    samples.push_back(std::move(x));
  }

  if (samples.empty()) throw DataError("empty dataset");
  return Dataset(std::move(samples), std::move(labels));
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

}  // namespace

Dataset parse_libsvm_file(const std::string& path, const LibsvmOptions& opts) {
  auto in = open_or_throw(path);
  return parse_libsvm(in, opts);
}

Dataset parse_csv_file(const std::string& path, const CsvOptions& opts) {
  auto in = open_or_throw(path);
  return parse_csv(in, opts);
}

void write_trace_csv(std::ostream& out, const TrainingTrace& trace) {
  out << "update_index,objective\n";
  out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < trace.update_index.size(); ++i) {
    out << trace.update_index[i] << ',' << trace.objective[i] << '\n';
  }
}

void write_trace_csv_file(const std::string& path, const TrainingTrace& trace) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_trace_csv(out, trace);
  out.flush();
  if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace rfsvm
