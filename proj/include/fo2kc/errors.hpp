#pragma once

#include <stdexcept>
#include <string>

namespace fo2kc {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed sentence text, NNF file, or DIMACS file. Line/column are 1-based;
/// zero means "not applicable".
class ParseError : public Error {
public:
  ParseError(const std::string &msg, int line = 0, int column = 0)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string &msg, int line, int column) {
    if (line == 0)
      return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
  }

  int line_;
  int column_;
};

/// Input lies outside the supported fragment or lacks required structure.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class ResourceError : public Error {
public:
  using Error::Error;
};

} // namespace fo2kc
