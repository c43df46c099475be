#include "codedlf/error.hpp"

namespace codedlf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kDegeneratePlane: return "degenerate-plane";
    case ErrorKind::kDegenerateProbes: return "degenerate-probes";
    case ErrorKind::kAmbiguousMatch: return "ambiguous-match";
    case ErrorKind::kOutOfBounds: return "out-of-bounds";
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kFormat: return "format";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace codedlf
