#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdwb {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Unbound or duplicate declaration names.
class BindError : public Error {
public:
  using Error::Error;
};

class EvalError : public Error {
public:
  using Error::Error;
};

class OpenTermError : public EvalError {
public:
  using EvalError::EvalError;
};

class OverflowError : public EvalError {
public:
  using EvalError::EvalError;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class TranslationError : public Error {
public:
  using Error::Error;
};

class CapExceeded : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

}  // namespace cdwb
