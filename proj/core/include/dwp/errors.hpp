#pragma once

#include <stdexcept>
#include <string>

namespace dwp {

enum class ErrorKind {
  domain,      // invalid physical input (nonpositive density, ...)
  case_error,  // formula applied outside its case (e.g. vacuum fan with u_l >= u_r)
  degenerate,  // no delta peak exists (u_l == u_r)
  range,       // query outside a tabulated or admissible range
  cfl,         // step rejected by the CFL precondition
  parameter,   // invalid scheme parameter
  solver,      // iterative solver did not converge
  config,      // configuration parse / validation failure
  io,          // file system failure
  unsupported, // operation not available for this input
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so the CLI can emit a
/// machine-readable error line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dwp
