#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropdiff {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated series does not carry enough coefficients for the request.
class precision_error : public error {
 public:
  using error::error;
};

/// An argument violates an operation's precondition (arity mismatch,
/// truncated input where an exact one is required, ...).
class invalid_input_error : public error {
 public:
  using error::error;
};

/// The enumeration space is larger than the configured cap.
class search_space_error : public error {
 public:
  search_space_error(std::string msg, long double size, std::uint64_t cap)
      : error(std::move(msg)), size_(size), cap_(cap) {}
  long double size() const noexcept { return size_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  long double size_;
  std::uint64_t cap_;
};

/// Syntax error in one of the text grammars. Line and column are 1-based.
class parse_error : public error {
 public:
  parse_error(const std::string& msg, std::size_t line, std::size_t column,
              std::vector<std::string> expected = {})
      : error(format(msg, line, column, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t column,
                            const std::vector<std::string>& expected) {
    std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
    if (!expected.empty()) {
      s += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) s += i + 1 == expected.size() ? " or " : ", ";
        s += expected[i];
      }
      s += ")";
    }
    return s;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace tropdiff
