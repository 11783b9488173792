#include "cater/error.hpp"

namespace cater {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::OverlapError: return "OverlapError";
    case ErrorCode::SizeError: return "SizeError";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::EmptyCounts: return "EmptyCounts";
    case ErrorCode::SetMismatch: return "SetMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::FeatureMismatch: return "FeatureMismatch";
    case ErrorCode::InvalidDesignation: return "InvalidDesignation";
    case ErrorCode::NoSupport: return "NoSupport";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::ZeroN: return "ZeroN";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
  }
  return "Unknown";
}

}  // namespace cater
