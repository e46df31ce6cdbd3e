#include "dwp/errors.hpp"

namespace dwp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::case_error: return "case";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::range: return "range";
    case ErrorKind::cfl: return "cfl";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::solver: return "solver";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    case ErrorKind::unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace dwp
