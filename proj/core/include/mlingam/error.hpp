#pragma once

#include <stdexcept>
#include <string>

namespace mlingam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument violates a documented precondition (shape, range, emptiness).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Connection matrix admits no causal ordering.
class AcyclicityError : public Error {
 public:
  using Error::Error;
};

/// Regressor with zero empirical variance.
class DegenerateRegressor : public Error {
 public:
  using Error::Error;
};

/// Row with zero variance passed where a scale is required.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Predecessor Gram matrix is singular at some position of the ordering.
class CollinearityError : public Error {
 public:
  CollinearityError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}

  /// 0-based position in the causal ordering whose regression failed.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mlingam
