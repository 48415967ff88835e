#include "mcom/error.hpp"

namespace mcom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::None: return "None";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::DegeneratePolynomial: return "DegeneratePolynomial";
    case ErrorCode::UnstableSystem: return "UnstableSystem";
    case ErrorCode::SingularSolve: return "SingularSolve";
    case ErrorCode::LyapunovResidual: return "LyapunovResidual";
    case ErrorCode::NonPhysicalCM: return "NonPhysicalCM";
    case ErrorCode::DegenerateDeterminant: return "DegenerateDeterminant";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace mcom
