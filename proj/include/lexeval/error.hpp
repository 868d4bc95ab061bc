// -*- mode: c++ -*-
#ifndef LEXEVAL_ERROR_HPP
#define LEXEVAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexeval {

/// Malformed input document. line() is 1-based, 0 when not attached to a line.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A value or call that breaks a documented precondition or invariant.
class InvariantError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lexeval

#endif
