#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace stnet {

/// A UTC instant with microsecond resolution.
struct UtcTime {
    std::int64_t micros = 0;  // since the Unix epoch

    friend constexpr auto operator<=>(UtcTime, UtcTime) = default;

    static constexpr UtcTime from_seconds(std::int64_t s) { return UtcTime{s * 1'000'000}; }
};

/// Parses "YYYY-MM-DDTHH:MM:SS[.ffffff](Z|+00:00)". Throws InputError on anything else,
/// including non-UTC offsets.
UtcTime parse_iso8601(std::string_view text);

/// Inverse of parse_iso8601; fractional seconds are printed only when non-zero.
std::string format_iso8601(UtcTime t);

/// Parses a chat export timestamp such as "1677628800.000100" (decimal seconds).
/// Digits beyond microseconds are truncated.
UtcTime parse_decimal_seconds(std::string_view text);

std::string format_decimal_seconds(UtcTime t);

}  // namespace stnet
