#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trailnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, or 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value violates a type invariant or an operation precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Subset enumeration refused because the alphabet is larger than the guard.
class AlphabetLimitError : public Error {
 public:
  AlphabetLimitError(std::size_t size, std::size_t limit)
      : Error("alphabet has " + std::to_string(size) + " activities, limit is " +
              std::to_string(limit)),
        size_(size),
        limit_(limit) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

}  // namespace trailnet
