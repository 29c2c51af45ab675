#pragma once

#include "netloaduq/profile.hpp"

namespace nluq {

/// Metrics computed from a single net-load series, no baseline needed.
/// kurt is excess kurtosis. skew/kurt skip zero-variance days; the count of
/// skipped days is reported and moments_defined goes false only when every
/// day is degenerate.
struct BasefreeReport {
    double c_annual_kwh = 0.0;
    double sigma_kw = 0.0;
    double skew = 0.0;
    double kurt_excess = 0.0;
    double ramp_kw = 0.0;
    double ramp_rate_kw_per_min = 0.0;
    double entropy_bits = 0.0;
    double c_min_kw = 0.0;
    double c_max_kw = 0.0;
    double q5_kw = 0.0;
    double q95_kw = 0.0;
    double lql_kw = 0.0;
    double uql_kw = 0.0;
    long degenerate_days = 0;
    bool moments_defined = true;
};

/// Signed energy: sum of samples times dt. Negative samples subtract.
double annual_consumption_kwh(const TimeSeriesProfile& profile);

/// Mean over days of the per-day population standard deviation.
double mean_daily_std(const DailyPartition& partition);

/// Mean daily standardized third/fourth moments. Zero-variance days are
/// skipped (their z-scores are undefined); throws AllDaysDegenerate when no
/// day has variance.
struct DailyMoments {
    double skew = 0.0;
    double kurt_excess = 0.0;
    long degenerate_days = 0;
};
DailyMoments mean_daily_moments(const DailyPartition& partition);
double mean_daily_skew(const DailyPartition& partition);
double mean_daily_kurt(const DailyPartition& partition);

/// Mean absolute first difference over the whole series, crossing day
/// boundaries. Throws TooShort for N < 2.
double mean_ramp(const TimeSeriesProfile& profile);

/// mean_ramp divided by the interval length in minutes -> kW per minute.
double ramp_rate_kw_per_min(const TimeSeriesProfile& profile);

/// Shannon entropy (base 2) of each day's own histogram, averaged over days.
double mean_daily_entropy_bits(const DailyPartition& partition, const BinPolicy& bins);

/// Year-wide extremes and 5/95 percentiles plus mean per-day quartile tail
/// lengths (min..Q25 and Q75..max).
struct TailSummary {
    double c_min = 0.0;
    double c_max = 0.0;
    double q5 = 0.0;
    double q95 = 0.0;
    double lql = 0.0;
    double uql = 0.0;
};
TailSummary extremes_and_quartiles(const DailyPartition& partition);

/// All of the above for one retained window.
BasefreeReport basefree_report(const TimeSeriesProfile& retained, const DailyPartition& partition,
                               const BinPolicy& bins);

} // namespace nluq
