#include "stnet/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "stnet/error.hpp"

namespace stnet {
namespace {

constexpr std::int64_t kMicrosPerSecond = 1'000'000;

[[noreturn]] void bad_timestamp(std::string_view text, const char* why)
{
    throw InputError("invalid timestamp '" + std::string(text) + "': " + why);
}

int read_digits(std::string_view text, std::size_t& pos, std::size_t count, std::string_view whole)
{
    if (pos + count > text.size()) bad_timestamp(whole, "truncated");
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = text[pos + i];
        if (c < '0' || c > '9') bad_timestamp(whole, "expected digit");
        value = value * 10 + (c - '0');
    }
    pos += count;
    return value;
}

void expect(std::string_view text, std::size_t& pos, char c, std::string_view whole)
{
    if (pos >= text.size() || text[pos] != c) bad_timestamp(whole, "unexpected character");
    ++pos;
}

// Reads up to six fractional digits into microseconds; extra digits are dropped.
std::int64_t read_fraction(std::string_view text, std::size_t& pos, std::string_view whole)
{
    std::int64_t micros = 0;
    int digits = 0;
    const std::size_t begin = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        if (digits < 6) {
            micros = micros * 10 + (text[pos] - '0');
            ++digits;
        }
        ++pos;
    }
    if (pos == begin) bad_timestamp(whole, "empty fraction");
    for (; digits < 6; ++digits) micros *= 10;
    return micros;
}

}  // namespace

UtcTime parse_iso8601(std::string_view text)
{
    using namespace std::chrono;
    std::size_t pos = 0;
    const int y = read_digits(text, pos, 4, text);
    expect(text, pos, '-', text);
    const int mo = read_digits(text, pos, 2, text);
    expect(text, pos, '-', text);
    const int d = read_digits(text, pos, 2, text);
    if (pos >= text.size() || (text[pos] != 'T' && text[pos] != ' ')) bad_timestamp(text, "expected 'T'");
    ++pos;
    const int hh = read_digits(text, pos, 2, text);
    expect(text, pos, ':', text);
    const int mm = read_digits(text, pos, 2, text);
    expect(text, pos, ':', text);
    const int ss = read_digits(text, pos, 2, text);
    std::int64_t frac = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        frac = read_fraction(text, pos, text);
    }
    const std::string_view zone = text.substr(pos);
    if (zone != "Z" && zone != "+00:00") bad_timestamp(text, "only UTC ('Z' or '+00:00') is accepted");

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) bad_timestamp(text, "no such date");
    if (hh > 23 || mm > 59 || ss > 60) bad_timestamp(text, "time of day out of range");

    const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
    const std::int64_t secs = days * 86400 + hh * 3600 + mm * 60 + ss;
    return UtcTime{secs * kMicrosPerSecond + frac};
}

std::string format_iso8601(UtcTime t)
{
    using namespace std::chrono;
    std::int64_t secs = t.micros / kMicrosPerSecond;
    std::int64_t frac = t.micros % kMicrosPerSecond;
    if (frac < 0) {
        frac += kMicrosPerSecond;
        --secs;
    }
    std::int64_t days = secs / 86400;
    std::int64_t rem = secs % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[48];
    if (frac == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%06lldZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60),
                      static_cast<long long>(frac));
    }
    std::string out = buf;
    if (frac != 0) {
        const std::size_t z = out.find_last_not_of('0', out.size() - 2);
        out.erase(z + 1, out.size() - 2 - z);
    }
    return out;
}

UtcTime parse_decimal_seconds(std::string_view text)
{
    const std::size_t dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    std::int64_t secs = 0;
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), secs);
    if (ec != std::errc{} || ptr != whole.data() + whole.size() || whole.empty() || secs < 0) {
        bad_timestamp(text, "expected decimal seconds");
    }
    std::int64_t frac = 0;
    if (dot != std::string_view::npos) {
        std::size_t pos = dot + 1;
        frac = read_fraction(text, pos, text);
        if (pos != text.size()) bad_timestamp(text, "trailing characters");
    }
    return UtcTime{secs * kMicrosPerSecond + frac};
}

std::string format_decimal_seconds(UtcTime t)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(t.micros / kMicrosPerSecond),
                  static_cast<long long>(t.micros % kMicrosPerSecond));
    return buf;
}

}  // namespace stnet
