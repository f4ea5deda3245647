#pragma once

#include <stdexcept>
#include <string>

namespace beurling {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A certified quantity could not be resolved before the precision cap.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Two Beurling integers could not be ordered at the precision cap.
/// The message names the colliding exponent vectors.
class OrderingUndecided : public PrecisionError {
 public:
  OrderingUndecided(const std::string& what, std::string left, std::string right)
      : PrecisionError(what), left_(std::move(left)), right_(std::move(right)) {}

  const std::string& left() const { return left_; }
  const std::string& right() const { return right_; }

 private:
  std::string left_;
  std::string right_;
};

}  // namespace beurling
