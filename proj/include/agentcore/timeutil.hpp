#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace agentcore::util {

constexpr double kSecondsPerDay = 86400.0;

// Formats epoch seconds as UTC ISO-8601, e.g. "2026-03-29T14:30:00Z".
std::string format_iso(std::int64_t epoch_seconds);

// Same without the trailing Z (used where display format omits it).
std::string format_iso_no_suffix(std::int64_t epoch_seconds);

// Parses "YYYY-MM-DDTHH:MM:SS[Z]" or a bare "YYYY-MM-DD" (midnight UTC).
std::optional<std::int64_t> parse_iso(const std::string& text);

// "YYYY-MM-DD" for the UTC day containing the timestamp.
std::string utc_date(std::int64_t epoch_seconds);

// Compact duration: 8100s -> "2h15m", 540s -> "9m", 42s -> "42s".
std::string format_duration(std::int64_t seconds);

}  // namespace agentcore::util
