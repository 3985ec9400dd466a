#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbvp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied input does not hold (bad mesh, bad id, bad file).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A coefficient function failed or produced a non-finite value at a knot.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& function, std::size_t knot, double x,
                  const std::string& detail);

  const std::string& function() const noexcept { return function_; }
  std::size_t knot() const noexcept { return knot_; }

 private:
  std::string function_;
  std::size_t knot_;
};

}  // namespace qbvp
