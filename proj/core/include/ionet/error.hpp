#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ionet {

/// Failure categories raised by the library. The CLI prints the name of the
/// code on the diagnostic stream, so the spelling is part of the interface.
enum class ErrorCode {
  NegativeEntry,
  NonFiniteEntry,
  DimensionMismatch,
  NoConvergence,
  SingularMatrix,
  NotStronglyConnected,
  BadDamping,
  SpectralRadiusNotLessThanOne,
  InvalidArgument,
  TraceTooLarge,
  // Assumption failures reported when a command requires a valid network.
  NoOutRoot,
  WeightsNotColumnStochastic,
  RootSubgraphNotStronglyConnected,
  RootSubgraphPeriodic,
  EdgeMatrixNotPrimitive,
  EdgeColumnSumExceedsOne,
  // File handling.
  ParseError,
  SchemaError,
  ValueError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

}  // namespace ionet
