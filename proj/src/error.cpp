#include "lsat/error.hpp"

namespace lsat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AmplitudeTooLarge: return "AmplitudeTooLarge";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::BadPath: return "BadPath";
    case ErrorCode::BadProfile: return "BadProfile";
    case ErrorCode::NonPhysical: return "NonPhysical";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadChannel: return "BadChannel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::DegenerateProfile: return "DegenerateProfile";
    case ErrorCode::NoChords: return "NoChords";
    case ErrorCode::NonUniformSampling: return "NonUniformSampling";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::EvidenceZero: return "EvidenceZero";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptRecord: return "CorruptRecord";
    case ErrorCode::CityNotFound: return "CityNotFound";
    case ErrorCode::RangeEmpty: return "RangeEmpty";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace lsat
