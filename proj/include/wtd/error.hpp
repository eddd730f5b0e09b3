#pragma once

#include <stdexcept>
#include <string>

namespace wtd {

// One error kind per contract violation the library can report.
enum class ErrorKind {
  // configuration / usage
  ConfigError,
  InvalidArgument,
  ParseError,
  IoError,
  // grid operations
  CellSizeMismatch,
  OffsetTooLarge,
  NonDivisibleShape,
  InsufficientCoverage,
  AlignmentError,
  // features / wells
  MissingMandatoryLayer,
  ZeroPrecipitation,
  UnknownClassCode,
  EmptySeries,
  MissingColumn,
  // proxies
  EmptyEligibleSet,
  // model engine
  WidthMismatch,
  DegenerateData,
  // trainer
  UnresolvedPixel,
  EmptyFocus,
  TooFewRecords,
  AllFitsFailed,
  // evaluator / stress
  LengthMismatch,
  EmptyInput,
  RowMismatch,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// CLI exit classes: 2 = config error, 3 = data error, 4 = numeric failure.
int exit_code_for(ErrorKind kind);

}  // namespace wtd
