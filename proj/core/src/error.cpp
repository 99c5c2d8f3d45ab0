#include "ionet/error.hpp"

namespace ionet {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::BadDamping: return "BadDamping";
    case ErrorCode::SpectralRadiusNotLessThanOne: return "SpectralRadiusNotLessThanOne";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TraceTooLarge: return "TraceTooLarge";
    case ErrorCode::NoOutRoot: return "NoOutRoot";
    case ErrorCode::WeightsNotColumnStochastic: return "WeightsNotColumnStochastic";
    case ErrorCode::RootSubgraphNotStronglyConnected: return "RootSubgraphNotStronglyConnected";
    case ErrorCode::RootSubgraphPeriodic: return "RootSubgraphPeriodic";
    case ErrorCode::EdgeMatrixNotPrimitive: return "EdgeMatrixNotPrimitive";
    case ErrorCode::EdgeColumnSumExceedsOne: return "EdgeColumnSumExceedsOne";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValueError: return "ValueError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace ionet
