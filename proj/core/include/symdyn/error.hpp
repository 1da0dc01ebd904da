#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symdyn {

/// Machine-readable error classes. The CLI prints `name(kind)` as the first
/// token of its single-line error report.
enum class ErrorKind {
  InvalidArgument,
  ParseError,
  AlphabetMismatch,
  OutOfWindow,
  OutOfRange,
  WindowTooShort,
  NotSelfProlongable,
  TotalityFailure,
  InsufficientMargin,
  NotBijective,
  WordTooShort,
  AmbiguousEntry,
  DegreeMismatch,
  DegenerateInput,
  IoError,
};

std::string_view name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace symdyn
