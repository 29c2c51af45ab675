#pragma once

#include <filesystem>
#include <string>

#include "netloaduq/profile.hpp"

namespace nluq {

/// Loads a `timestamp,power_kw` CSV (ISO-8601 local timestamps, one row per
/// sample). The interval is inferred from the first two rows and every
/// subsequent row must advance by exactly that interval. Errors name the
/// offending line: ParseError, NonUniformSpacing, NonFiniteValue.
TimeSeriesProfile load_profile_csv(const std::filesystem::path& path);

/// Writes a profile back in the same format.
void write_profile_csv(const std::filesystem::path& path, const TimeSeriesProfile& profile);

} // namespace nluq
