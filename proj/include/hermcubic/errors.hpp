#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hermcubic {

enum class ErrorCode {
  NotPrimePower,
  ExceedsCap,
  InvalidArgument,
  OutOfRange,
  BudgetExceeded,
  WrongDimension,
  NotOnVariety,
  Degenerate,
  DuplicateHyperplanes,
  InsufficientPencilMembers,
  PreconditionViolated,
  UnknownSuite,
  UnknownMode,
  InternalInvariant,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::ExceedsCap: return "ExceedsCap";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotOnVariety: return "NotOnVariety";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DuplicateHyperplanes: return "DuplicateHyperplanes";
    case ErrorCode::InsufficientPencilMembers: return "InsufficientPencilMembers";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::UnknownMode: return "UnknownMode";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hermcubic
