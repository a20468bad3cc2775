#pragma once

#include <stdexcept>
#include <string>

namespace rfsvm {

// Malformed dataset input; the message carries the offending line number.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable, corrupt, or version-incompatible model file.
class ModelIoError : public std::runtime_error {
 public:
  explicit ModelIoError(const std::string& what) : std::runtime_error(what) {}
};

// Training drove the iterate or the objective to a non-finite value.
class DivergedError : public std::runtime_error {
 public:
  explicit DivergedError(const std::string& what) : std::runtime_error(what) {}
};

// Finite-difference check requested at a point too close to a kink.
class KinkError : public std::runtime_error {
 public:
  explicit KinkError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rfsvm
