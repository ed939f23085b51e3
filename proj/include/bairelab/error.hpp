#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace bairelab {

enum class ErrorCode {
  PrefixClosureViolation,
  InvalidParameter,
  BudgetExceeded,
  TreeMismatch,
  InvalidSegment,
  TooLargeForOracle,
  SupportsNotIncomparable,
  SupportNotChain,
  NonzeroRootCoefficient,
  BadIndexList,
  NotInUnitBall,
  FamilyTooSmall,
  WindowOutOfRange,
  FunctionalSetTooLarge,
  KOutOfRange,
  ParseError,
  ValidationError,
};

/// Stable identifier used in JSON error objects.
[[nodiscard]] const char* error_code_name(ErrorCode code) noexcept;

/// Base of every precondition / validation failure raised by the library.
/// Internal failures (bugs) use std::logic_error and friends instead.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Raised by checkers that require the supports of two vectors to be
/// completely incomparable; carries the offending pair and a witness.
class SupportsNotIncomparableError : public Error {
public:
  SupportsNotIncomparableError(std::size_t i, std::size_t j, std::string first_node,
                               std::string second_node)
      : Error(ErrorCode::SupportsNotIncomparable,
              "supports of vectors " + std::to_string(i) + " and " + std::to_string(j) +
                  " are not incomparable: " + first_node + " vs " + second_node),
        i_(i), j_(j), first_(std::move(first_node)), second_(std::move(second_node)) {}

  [[nodiscard]] std::size_t first_index() const noexcept { return i_; }
  [[nodiscard]] std::size_t second_index() const noexcept { return j_; }
  [[nodiscard]] const std::string& first_node() const noexcept { return first_; }
  [[nodiscard]] const std::string& second_node() const noexcept { return second_; }

private:
  std::size_t i_;
  std::size_t j_;
  std::string first_;
  std::string second_;
};

} // namespace bairelab
