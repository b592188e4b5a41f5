#pragma once

#include <cmath>
#include <cstdint>
#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace persona {

/// Bad input data (malformed file, out-of-range value, schema mismatch).
/// The CLI maps this to exit code 1; anything else is an internal error (2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

[[noreturn]] inline void fail(const std::string& msg) { throw ValidationError(msg); }

} // namespace detail

inline void require(bool cond, const std::string& msg) {
    if (!cond) detail::fail(msg);
}

/// Shortest round-trip decimal form of a double. Used by every text format
/// so that identical values serialize to identical bytes.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc() && res.ptr == s.data() + s.size(),
            context + ": not a number: '" + s + "'");
    return v;
}

inline long long parse_int(const std::string& s, const std::string& context) {
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc() && res.ptr == s.data() + s.size(),
            context + ": not an integer: '" + s + "'");
    return v;
}

/// FNV-1a, used to stamp lexicon contents into emotion model files.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Inverse standard normal CDF by bisection on normal_cdf. p in (0,1).
/// Plenty accurate for confidence bounds and called once per prune pass.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) detail::fail("normal_quantile: p must be in (0,1)");
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Howard Hinnant's civil-date algorithms; enough calendar support for
// day/year arithmetic on epoch-second timestamps.
struct CivilDate {
    int year;
    unsigned month;
    unsigned day;
};

inline long long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

inline CivilDate civil_from_days(long long z) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long y = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {static_cast<int>(y + (m <= 2)), m, d};
}

constexpr long long kSecondsPerDay = 86400;

inline long long epoch_seconds(int y, unsigned m, unsigned d) {
    return days_from_civil(y, m, d) * kSecondsPerDay;
}

inline int year_of_epoch(long long seconds) {
    long long days = seconds / kSecondsPerDay;
    if (seconds < 0 && seconds % kSecondsPerDay != 0) --days;
    return civil_from_days(days).year;
}

/// Parse "YYYY-MM-DD" to epoch seconds (midnight UTC).
inline long long parse_date(const std::string& s) {
    require(s.size() == 10 && s[4] == '-' && s[7] == '-', "date must be YYYY-MM-DD: '" + s + "'");
    int y = static_cast<int>(parse_int(s.substr(0, 4), "date year"));
    int m = static_cast<int>(parse_int(s.substr(5, 2), "date month"));
    int d = static_cast<int>(parse_int(s.substr(8, 2), "date day"));
    require(m >= 1 && m <= 12 && d >= 1 && d <= 31, "date out of range: '" + s + "'");
    return epoch_seconds(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

} // namespace persona
