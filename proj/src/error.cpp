#include "wtd/error.hpp"

namespace wtd {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::CellSizeMismatch: return "CellSizeMismatch";
    case ErrorKind::OffsetTooLarge: return "OffsetTooLarge";
    case ErrorKind::NonDivisibleShape: return "NonDivisibleShape";
    case ErrorKind::InsufficientCoverage: return "InsufficientCoverage";
    case ErrorKind::AlignmentError: return "AlignmentError";
    case ErrorKind::MissingMandatoryLayer: return "MissingMandatoryLayer";
    case ErrorKind::ZeroPrecipitation: return "ZeroPrecipitation";
    case ErrorKind::UnknownClassCode: return "UnknownClassCode";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::EmptyEligibleSet: return "EmptyEligibleSet";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::UnresolvedPixel: return "UnresolvedPixel";
    case ErrorKind::EmptyFocus: return "EmptyFocus";
    case ErrorKind::TooFewRecords: return "TooFewRecords";
    case ErrorKind::AllFitsFailed: return "AllFitsFailed";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::RowMismatch: return "RowMismatch";
  }
  return "UnknownError";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::InvalidArgument:
      return 2;
    case ErrorKind::DegenerateData:
    case ErrorKind::AllFitsFailed:
    case ErrorKind::InsufficientCoverage:
      return 4;
    default:
      return 3;
  }
}

}  // namespace wtd
