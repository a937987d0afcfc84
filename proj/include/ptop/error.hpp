#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or semantically invalid input (unknown names, bad arguments).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Text that does not follow one of the input grammars.
class ParseError : public InvalidInput {
 public:
  ParseError(std::string msg, std::size_t line, std::size_t column)
      : InvalidInput(std::to_string(line) + ":" + std::to_string(column) +
                     ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A desk-scale size cap was exceeded.
class CapOverflow : public Error {
 public:
  CapOverflow(const std::string& what, std::size_t size, std::size_t cap)
      : Error(what + " has size " + std::to_string(size) +
              " which exceeds the cap of " + std::to_string(cap)) {}
};

/// An evaluation/subdivision budget ran out before a result was certified.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different presentations or frames.
class MixedOperands : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace ptop
