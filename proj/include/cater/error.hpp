#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cater {

// Numeric values mirror the CATER_ERR_* codes of the C API.
enum class ErrorCode : int {
  InvalidArgument = 1,
  MalformedLine = 2,
  CycleError = 3,
  MultipleRoots = 4,
  FormatError = 5,
  OverlapError = 6,
  SizeError = 7,
  InvalidIndex = 8,
  Overflow = 9,
  EmptyCounts = 10,
  SetMismatch = 11,
  DimensionMismatch = 12,
  TooLarge = 13,
  EmptyCandidates = 14,
  FeatureMismatch = 15,
  InvalidDesignation = 16,
  NoSupport = 17,
  InvalidP = 18,
  ZeroN = 19,
  NotNormalized = 20,
  InfeasibleSpec = 21,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line, const std::string& detail)
      : Error(ErrorCode::MalformedLine,
              "line " + std::to_string(line) + ": " + detail),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cater
