#pragma once

#include <cstdint>
#include <string>

namespace nluq {

/// Wall-clock timestamp. Local time, no timezone or DST arithmetic: profiles
/// carry whatever clock their source CSV used and day boundaries are that
/// clock's midnights.
struct CivilTime {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;

    bool operator==(const CivilTime&) const = default;
};

/// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);

/// Inverse of days_from_civil.
CivilTime civil_from_days(std::int64_t days);

/// Seconds since 1970-01-01T00:00:00 on the profile's own clock.
std::int64_t to_epoch_seconds(const CivilTime& t);

CivilTime from_epoch_seconds(std::int64_t seconds);

/// Seconds elapsed since the most recent midnight.
int seconds_into_day(const CivilTime& t);

/// Parses "YYYY-MM-DDTHH:MM[:SS]" ('T' or space separator). Throws ParseError.
CivilTime parse_iso8601(const std::string& text);

/// "YYYY-MM-DDTHH:MM:SS"
std::string format_iso8601(const CivilTime& t);

} // namespace nluq
