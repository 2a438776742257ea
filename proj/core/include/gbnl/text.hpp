#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gbnl::text {

/// Shortest decimal form that parses back to the identical double.
std::string format_exact(double value);
/// Six significant digits, for human-facing reports.
std::string format_sig6(double value);
/// Throws kConfig with `what` in the message if `field` is not a number.
double parse_double(std::string_view field, std::string_view what);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view line, char delim);

}  // namespace gbnl::text
