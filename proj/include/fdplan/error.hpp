#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class LexError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Well-formed input that violates a model invariant. `subject` names the
// offending schema, object or literal.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& subject, const std::string& message)
      : Error(subject.empty() ? message : subject + ": " + message), subject_(subject) {}

  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  CycleError(std::size_t before, std::size_t after)
      : Error("ordering " + std::to_string(before) + " < " + std::to_string(after) +
              " would create a cycle") {}
};

class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace fdplan
