#pragma once

#include <stdexcept>
#include <string>

namespace lightpath {

// Malformed input text (graph or delay-system files). Carries a 1-based
// line number when the offending line is known.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(msg)
                                    : std::move(msg)),
        line_(line) {}

  int line() const { return line_; }

private:
  int line_;
};

// Violated precondition or invalid argument value.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Computation refused because it would exceed a configured resource ceiling.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace lightpath
