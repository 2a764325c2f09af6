#include "agentcore/timeutil.hpp"

#include <cstdio>
#include <ctime>

namespace agentcore::util {

std::string format_iso(std::int64_t epoch_seconds) {
    return format_iso_no_suffix(epoch_seconds) + "Z";
}

std::string format_iso_no_suffix(std::int64_t epoch_seconds) {
    std::time_t t = static_cast<std::time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::optional<std::int64_t> parse_iso(const std::string& text) {
    std::tm tm{};
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    int matched = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    if (matched != 6) {
        matched = std::sscanf(text.c_str(), "%d-%d-%d", &y, &mo, &d);
        if (matched != 3) return std::nullopt;
        h = mi = s = 0;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 ||
        s < 0 || s > 60) {
        return std::nullopt;
    }
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    return static_cast<std::int64_t>(timegm(&tm));
}

std::string utc_date(std::int64_t epoch_seconds) {
    std::time_t t = static_cast<std::time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday);
    return buf;
}

std::string format_duration(std::int64_t seconds) {
    if (seconds < 0) seconds = 0;
    std::int64_t h = seconds / 3600;
    std::int64_t m = (seconds % 3600) / 60;
    char buf[32];
    if (h > 0) {
        std::snprintf(buf, sizeof(buf), "%lldh%lldm", static_cast<long long>(h),
                      static_cast<long long>(m));
    } else if (m > 0) {
        std::snprintf(buf, sizeof(buf), "%lldm", static_cast<long long>(m));
    } else {
        std::snprintf(buf, sizeof(buf), "%llds", static_cast<long long>(seconds));
    }
    return buf;
}

}  // namespace agentcore::util
