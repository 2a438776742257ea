#include "gbnl/grid.hpp"

#include <charconv>

#include "gbnl/error.hpp"

namespace gbnl {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    raise(ErrorCode::kArgument, "grid: bad integer '" + std::string(text) + "'");
  }
  return value;
}

bool is_contiguous(const EpsilonGrid& grid) {
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (grid[k] != grid[k - 1] + 1) return false;
  }
  return grid.size() > 1;
}

}  // namespace

void check_grid(const EpsilonGrid& grid) {
  if (grid.empty()) raise(ErrorCode::kArgument, "grid: empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] < 0) raise(ErrorCode::kArgument, "grid: negative value");
    if (k > 0 && grid[k] <= grid[k - 1]) raise(ErrorCode::kArgument, "grid: values must ascend");
  }
}

EpsilonGrid grid_range(std::int64_t lo, std::int64_t hi) {
  EpsilonGrid grid;
  for (auto e = lo; e <= hi; ++e) grid.push_back(e);
  check_grid(grid);
  return grid;
}

EpsilonGrid parse_grid(std::string_view text) {
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    return grid_range(parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2)));
  }
  EpsilonGrid grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    grid.push_back(parse_int(text.substr(start, comma - start)));
    start = comma + 1;
  }
  check_grid(grid);
  return grid;
}

std::string format_grid(const EpsilonGrid& grid) {
  if (is_contiguous(grid)) return std::to_string(grid.front()) + ".." + std::to_string(grid.back());
  std::string out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(grid[k]);
  }
  return out;
}

}  // namespace gbnl
