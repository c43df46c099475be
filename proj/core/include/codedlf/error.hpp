#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codedlf {

enum class ErrorKind {
  kInvalidArgument,
  kInsufficientData,
  kDegeneratePlane,
  kDegenerateProbes,
  kAmbiguousMatch,
  kOutOfBounds,
  kInvalidSpec,
  kIo,
  kFormat,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it to an exit code or a per-capture failure record.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace codedlf
