#pragma once

#include <string>
#include <string_view>

namespace atomic {

/// Shortest decimal text that parses back to the same double. NaN is "NaN".
std::string format_double(double value);

/// Inverse of format_double; throws Error(MalformedToken) on junk.
double parse_double(std::string_view text);

/// Rounds away accumulated binary noise from grid arithmetic (1e-12 quantum).
double snap_level(double value);

}  // namespace atomic
