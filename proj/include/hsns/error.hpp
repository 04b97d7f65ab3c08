#pragma once

#include <stdexcept>
#include <string>

namespace hsns {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  Usage = 1,        ///< bad flags, bad configuration keys or values
  Data = 2,         ///< malformed or mismatched input data
  NumericGate = 3,  ///< a numerical check or smallness gate failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Data: return "data";
    case ErrorKind::NumericGate: return "numeric-gate";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hsns
