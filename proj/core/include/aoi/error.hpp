#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aoi {

enum class ErrorKind {
  kInvalidParameter,
  kConfig,
  kUnknownNode,
  kSelfLoop,
  kLinkIntoSource,
  kDuplicatePriority,
  kUnreachableNode,
  kNotATree,
  kArithmeticLimitUndefined,
  kVarianceOutOfRange,
  kUnsortedSampleTimes,
  kTrajectoryFormat,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. `kind()` lets callers (the CLI in particular) map
/// failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aoi
