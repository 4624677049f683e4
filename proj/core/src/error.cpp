#include "aoi/error.hpp"

namespace aoi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "InvalidParameter";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kUnknownNode: return "UnknownNode";
    case ErrorKind::kSelfLoop: return "SelfLoop";
    case ErrorKind::kLinkIntoSource: return "LinkIntoSource";
    case ErrorKind::kDuplicatePriority: return "DuplicatePriority";
    case ErrorKind::kUnreachableNode: return "UnreachableNode";
    case ErrorKind::kNotATree: return "NotATree";
    case ErrorKind::kArithmeticLimitUndefined: return "ArithmeticLimitUndefined";
    case ErrorKind::kVarianceOutOfRange: return "VarianceOutOfRange";
    case ErrorKind::kUnsortedSampleTimes: return "UnsortedSampleTimes";
    case ErrorKind::kTrajectoryFormat: return "TrajectoryFormat";
  }
  return "Unknown";
}

}  // namespace aoi
