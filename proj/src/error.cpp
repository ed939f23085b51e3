#include "bairelab/error.hpp"

namespace bairelab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::PrefixClosureViolation: return "PrefixClosureViolation";
  case ErrorCode::InvalidParameter: return "InvalidParameter";
  case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  case ErrorCode::TreeMismatch: return "TreeMismatch";
  case ErrorCode::InvalidSegment: return "InvalidSegment";
  case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
  case ErrorCode::SupportsNotIncomparable: return "SupportsNotIncomparable";
  case ErrorCode::SupportNotChain: return "SupportNotChain";
  case ErrorCode::NonzeroRootCoefficient: return "NonzeroRootCoefficient";
  case ErrorCode::BadIndexList: return "BadIndexList";
  case ErrorCode::NotInUnitBall: return "NotInUnitBall";
  case ErrorCode::FamilyTooSmall: return "FamilyTooSmall";
  case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
  case ErrorCode::FunctionalSetTooLarge: return "FunctionalSetTooLarge";
  case ErrorCode::KOutOfRange: return "KOutOfRange";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

} // namespace bairelab
