#pragma once

#include <stdexcept>
#include <string>

namespace kernelcost {

/// Stable error codes surfaced by library operations and mapped to CLI exit
/// codes. Diagnostic codes from validation are separate (see diagnostics.hpp).
enum class Errc {
  parse,
  needs_binding,
  needs_fallback,
  cap_exceeded,
  type_conflict,
  assumption_violated,
  schema_mismatch,
  nonpositive_time,
  empty_input,
  io,
  invalid_argument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse: return "E_PARSE";
    case Errc::needs_binding: return "E_NEEDS_BINDING";
    case Errc::needs_fallback: return "E_NEEDS_FALLBACK";
    case Errc::cap_exceeded: return "E_CAP_EXCEEDED";
    case Errc::type_conflict: return "E_TYPE_CONFLICT";
    case Errc::assumption_violated: return "E_ASSUMPTION_VIOLATED";
    case Errc::schema_mismatch: return "E_SCHEMA_MISMATCH";
    case Errc::nonpositive_time: return "E_NONPOSITIVE_TIME";
    case Errc::empty_input: return "E_EMPTY";
    case Errc::io: return "E_IO";
    case Errc::invalid_argument: return "E_INVALID_ARGUMENT";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Syntax or construction-blocking semantic error from the kernel parser,
/// with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, std::string message)
      : std::runtime_error("line " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + message),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace kernelcost
