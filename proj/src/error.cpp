#include "kwsum/error.hpp"

namespace kwsum {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidEncoding:
      return "InvalidEncoding";
    case ErrorCode::kEmptyDocument:
      return "EmptyDocument";
    case ErrorCode::kNoComparableContent:
      return "NoComparableContent";
    case ErrorCode::kNoReferenceContent:
      return "NoReferenceContent";
    case ErrorCode::kMalformedLine:
      return "MalformedLine";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kEmptyFile:
      return "EmptyFile";
    case ErrorCode::kTruncatedFile:
      return "TruncatedFile";
    case ErrorCode::kMalformedHeader:
      return "MalformedHeader";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorCode::kIo:
      return "Io";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace kwsum
