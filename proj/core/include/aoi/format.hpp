#pragma once

#include <string>

namespace aoi {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Fixed 17-significant-digit form, as used in trajectory dumps.
std::string format_double17(double x);

}  // namespace aoi
