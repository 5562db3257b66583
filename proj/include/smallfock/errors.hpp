#pragma once

#include <stdexcept>
#include <string>

namespace smallfock {

// Violated operation precondition or malformed domain data.
// The command line tool maps this to exit code 2.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure missed its certified target (quadrature did not
// converge, eigensolver residual too large). Mapped to exit code 1.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smallfock
