// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace njust {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was not met.
class ContractError : public Error {
public:
  using Error::Error;
};

// Malformed frame, nested system or fixpoint definition.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Text input that does not follow the grammar.
class ParseError : public Error {
public:
  ParseError(const std::string &message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line), column_(column) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

private:
  int line_;
  int column_;
};

// A configured enumeration cap was exceeded.
class ResourceError : public Error {
public:
  ResourceError(std::string cap, std::string stage, std::size_t limit)
      : Error("cap '" + cap + "' (" + std::to_string(limit) +
              ") exceeded during " + stage),
        cap_(std::move(cap)), stage_(std::move(stage)), limit_(limit) {}
  [[nodiscard]] const std::string &cap() const { return cap_; }
  [[nodiscard]] const std::string &stage() const { return stage_; }
  [[nodiscard]] std::size_t limit() const { return limit_; }

private:
  std::string cap_;
  std::string stage_;
  std::size_t limit_;
};

struct Limits {
  std::size_t max_justifications = 1'000'000;
  std::size_t max_bodies = 1'000'000;
  std::size_t max_interpretations = 531'441; // 3^12
};

} // namespace njust
