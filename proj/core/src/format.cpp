#include "aoi/format.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace aoi {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string format_double17(double x) {
  std::array<char, 64> buf{};
  int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace aoi
