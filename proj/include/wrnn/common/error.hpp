#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wrnn {

enum class ErrorCode {
  // usage
  InvalidArgument,
  UnknownFamily,
  UnknownBand,
  UnknownKey,
  UsageError,
  // data
  MissingColumn,
  NonMonotonicTime,
  IrregularSampling,
  EmptySeries,
  ParseError,
  StepTooLarge,
  ConstantSeries,
  ConstantActual,
  TooShort,
  BadLevels,
  InconsistentPyramid,
  EmptyInput,
  LengthMismatch,
  StageMismatch,
  NonInvertibleStage,
  RankDeficient,
  InfeasibleConstraints,
  HorizonTooShort,
  MisalignedSeries,
  InsufficientHistory,
  IoError,
  // training
  NonFiniteActivation,
  Diverged,
};

/// Coarse grouping used by the command line for exit codes.
enum class ErrorCategory { usage, data, divergence };

std::string_view error_code_name(ErrorCode code);
ErrorCategory error_category(ErrorCode code);
std::string_view error_category_name(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wrnn
