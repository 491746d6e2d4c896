#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace protfeat {

// Root of every error thrown by the library. The CLI maps subclasses to exit
// codes, so each category below corresponds to one failure class.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an out-of-range parameter (negative order, theta >= 1, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyStructureError : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

class EmptySelectionError : public Error {
 public:
  using Error::Error;
};

// Two charges (or two points) share a position.
class SingularityError : public Error {
 public:
  SingularityError(std::size_t i, std::size_t j)
      : Error("coincident atoms at indices " + std::to_string(i) + " and "
              + std::to_string(j)),
        first_(i), second_(j) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace protfeat
