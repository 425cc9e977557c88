#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nrp {

// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InvalidBoard : public Error {
 public:
  using Error::Error;
};

// A move that does not fit the board, or a quarter count outside {1,2,3}.
// When raised from a sequence, index() is the 0-based position of the move.
class IllegalMove : public Error {
 public:
  explicit IllegalMove(const std::string& what, std::ptrdiff_t index = -1)
      : Error(index < 0 ? what : "move #" + std::to_string(index) + ": " + what),
        index_(index) {}

  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

// A value or cell lies in the wrong checkerboard class for the requested
// operation (odd block sizes preserve the class of every value).
class ParityMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Enumeration or group computation refused because it would exceed a bound.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// A computed fact contradicts a proven property (for instance a search that
// must succeed came back empty). Always a hard failure.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// Internal defect signal: an algorithm exceeded an iteration cap that the
// geometry guarantees is never reached.
class PlacementDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nrp
