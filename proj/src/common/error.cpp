#include "wrnn/common/error.hpp"

namespace wrnn {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::UnknownBand: return "UnknownBand";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::IrregularSampling: return "IrregularSampling";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ConstantSeries: return "ConstantSeries";
    case ErrorCode::ConstantActual: return "ConstantActual";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::BadLevels: return "BadLevels";
    case ErrorCode::InconsistentPyramid: return "InconsistentPyramid";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::StageMismatch: return "StageMismatch";
    case ErrorCode::NonInvertibleStage: return "NonInvertibleStage";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorCode::HorizonTooShort: return "HorizonTooShort";
    case ErrorCode::MisalignedSeries: return "MisalignedSeries";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonFiniteActivation: return "NonFiniteActivation";
    case ErrorCode::Diverged: return "Diverged";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownFamily:
    case ErrorCode::UnknownBand:
    case ErrorCode::UnknownKey:
    case ErrorCode::UsageError:
      return ErrorCategory::usage;
    case ErrorCode::NonFiniteActivation:
    case ErrorCode::Diverged:
      return ErrorCategory::divergence;
    default:
      return ErrorCategory::data;
  }
}

std::string_view error_category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::data: return "data";
    case ErrorCategory::divergence: return "divergence";
  }
  return "data";
}

}  // namespace wrnn
