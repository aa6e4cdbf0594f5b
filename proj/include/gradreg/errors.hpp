#pragma once

#include <stdexcept>
#include <string>

namespace gradreg {

/// Malformed input: files, polynomials, weights, CLI arguments.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }
  int line_;
  int column_;
};

/// The engine declines: a hypothesis is not certified or a quantity is
/// outside what can be computed (e.g. CM regularity without a Gorenstein type).
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested degree or homological bound exceeds the available window.
class WindowError : public Refusal {
 public:
  using Refusal::Refusal;
};

}  // namespace gradreg
