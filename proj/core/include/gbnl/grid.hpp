#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gbnl {

/// Ascending, non-negative integer filtration values.
using EpsilonGrid = std::vector<std::int64_t>;

/// Accepts "lo..hi" (inclusive) or a comma-separated list such as "0,2,5".
/// Throws kArgument on malformed, negative or non-ascending grids.
EpsilonGrid parse_grid(std::string_view text);
std::string format_grid(const EpsilonGrid& grid);
EpsilonGrid grid_range(std::int64_t lo, std::int64_t hi);
void check_grid(const EpsilonGrid& grid);

}  // namespace gbnl
