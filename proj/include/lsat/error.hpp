#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsat {

/// Failure categories raised across the toolkit.
enum class ErrorCode {
  InvalidArgument,
  AmplitudeTooLarge,
  SingularMetric,
  AsymmetricInput,
  BadPath,
  BadProfile,
  NonPhysical,
  NonFinite,
  EmptyInput,
  BadChannel,
  DimensionMismatch,
  EmptySeries,
  WindowTooLarge,
  DegenerateProfile,
  NoChords,
  NonUniformSampling,
  TooShort,
  EvidenceZero,
  AllZeroWeights,
  SingularSystem,
  SchemaError,
  ParseError,
  DuplicateTimestamp,
  VersionMismatch,
  CorruptRecord,
  CityNotFound,
  RangeEmpty,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lsat
