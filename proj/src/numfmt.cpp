#include "atomic/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "atomic/errors.hpp"

namespace atomic {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "NaN";
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw Error(ErrorKind::IoError, "cannot format double");
    }
    return std::string(buf, end);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (text == "NaN" || text == "nan") {
        return std::nan("");
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::MalformedToken, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

double snap_level(double value) { return std::round(value * 1e12) / 1e12; }

}  // namespace atomic
