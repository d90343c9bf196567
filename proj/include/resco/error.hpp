#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resco {

enum class ErrorKind {
  Parse,
  Range,
  Validation,
  Parameter,
  Contract,
  Size,
  Unsupported,
  Config,
  State,
  Io,
};

const char* to_string(ErrorKind kind);

/// Base of every exception thrown by the library. `kind()` lets callers and
/// tests discriminate failures without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline void require(bool ok, ErrorKind kind, const char* what) {
  if (!ok) throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

}  // namespace resco
