#pragma once

#include <stdexcept>
#include <string>

namespace dirlap {

enum class ErrorCode {
  IndexOutOfRange,
  NonPositiveWeight,
  DimensionMismatch,
  NotEulerian,
  NotStronglyConnected,
  NonFinite,
  NotPSD,
  KernelViolation,
  KernelMismatch,
  TooLarge,
  BadParams,
  Disconnected,
  WeightSpreadTooLarge,
  DegreeImbalance,
  LayerBudgetExceeded,
  MassImbalance,
  EpsOutOfRange,
  ZeroDegree,
  ZeroInDegree,
  NotMember,
  BudgetExceeded,
  CertificationFailed,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dirlap
