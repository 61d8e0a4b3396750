#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qobjsim {

/// Accepts "YYYY-MM-DD", with an optional "hh:mm:ss" part separated by
/// 'T' or a space, an optional fractional-seconds part, and an optional
/// "Z" or "+hh:mm" offset. Returns seconds since the epoch (UTC), or
/// nullopt if the string does not parse.
std::optional<int64_t> parse_iso8601(const std::string& s);

bool is_iso8601(const std::string& s);

/// "YYYY-MM-DD hh:mm:ssZ" for the given epoch seconds (the wire format
/// used throughout the fixtures).
std::string format_iso8601(int64_t epoch_seconds);

/// Current time in the wire format.
std::string now_iso8601();

}  // namespace qobjsim
