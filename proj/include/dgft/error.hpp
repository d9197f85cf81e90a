#pragma once

#include <stdexcept>
#include <string>

namespace dgft {

enum class Errc {
  IndexOutOfRange,
  SelfLoopRejected,
  DuplicateEdge,
  TooSmall,
  DimensionMismatch,
  NonSquare,
  NoConvergence,
  Singular,
  NotSymmetric,
  EmptyTaps,
  ParseError,
  InvalidArgument,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI and the Python binding can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

/// Parse failure with the offending 1-based line (0 when not line oriented).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(Errc::ParseError,
              line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dgft
