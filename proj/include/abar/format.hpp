#pragma once

#include <string>
#include <string_view>

namespace abar {

/// Shortest decimal that reads back to exactly `value`.
std::string format_shortest(double value);

/// Parses a complete decimal token; returns false on trailing junk or an
/// empty token.
bool parse_double(std::string_view text, double& out);

}  // namespace abar
