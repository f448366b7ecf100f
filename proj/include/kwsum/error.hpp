#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kwsum {

enum class ErrorCode {
  kInvalidEncoding,
  kEmptyDocument,
  kNoComparableContent,
  kNoReferenceContent,
  kMalformedLine,
  kDimensionMismatch,
  kEmptyFile,
  kTruncatedFile,
  kMalformedHeader,
  kLengthMismatch,
  kEmptyCorpus,
  kIo,
  kInvalidArgument,
};

const char* ToString(ErrorCode code);

// All library failures are reported through this type. `line()` is non-zero
// only for parse errors that can be pinned to an input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace kwsum
