#pragma once

#include <stdexcept>
#include <string>

namespace lrtherm {

// Invalid input: geometry, partitions, malformed configs. CLI exit code 2.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Requested problem size exceeds a dense-solver cap.
class capacity_error : public validation_error {
 public:
  explicit capacity_error(const std::string& what) : validation_error(what) {}
};

// Numerical failure: eigensolver breakdown, branch-cut residue, occupation
// outside its guard band. CLI exit code 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lrtherm
