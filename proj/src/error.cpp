#include "singshock/error.hpp"

namespace singshock {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::DegenerateJump: return "DegenerateJump";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::NegativeStrength: return "NegativeStrength";
    case ErrorKind::NoClassicalSolution: return "NoClassicalSolution";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::Unresolvable: return "Unresolvable";
    case ErrorKind::OutsideSDSL: return "OutsideSDSL";
    case ErrorKind::OutsideFan: return "OutsideFan";
    case ErrorKind::OvercompressibilityLost: return "OvercompressibilityLost";
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::ExpectedTwoShocks: return "ExpectedTwoShocks";
    case ErrorKind::EventCongestion: return "EventCongestion";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::NoFront: return "NoFront";
    case ErrorKind::WindowClipped: return "WindowClipped";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(error_kind_name(kind)) + ": " + what);
}

}  // namespace singshock
