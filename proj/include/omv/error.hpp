#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omv {

/// Broad classes of failure, used by the CLI to pick an exit status.
enum class ErrorKind {
  Parse,
  EmptyGraph,
  NodeId,
  Coverage,
  Consistency,
  Parameter,
  UndefinedModularity,
  UndefinedThreshold,
  UndefinedBaseline,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures caused by undefined numeric quantities rather than bad data.
  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::UndefinedModularity ||
           kind_ == ErrorKind::UndefinedThreshold ||
           kind_ == ErrorKind::UndefinedBaseline;
  }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace omv
