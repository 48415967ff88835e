#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcom {

enum class ErrorCode {
  None = 0,
  InvalidParameter,
  NonConvergence,
  EigenFailure,
  DegeneratePolynomial,
  UnstableSystem,
  SingularSolve,
  LyapunovResidual,
  NonPhysicalCM,
  DegenerateDeterminant,
  DomainError,
  InvalidSpec,
  UnknownPreset,
  ConfigParse,
  Io,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported as mcom::Error carrying a code, so the
// sweep can record them per cell and the C API can map them to statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mcom
