#include "netloaduq/basefree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nluq {

double annual_consumption_kwh(const TimeSeriesProfile& profile) {
    profile.validate();
    const double sum = std::accumulate(profile.values.begin(), profile.values.end(), 0.0);
    return sum * profile.dt_hours;
}

double mean_daily_std(const DailyPartition& partition) {
    const double sum =
        std::accumulate(partition.day_stds.begin(), partition.day_stds.end(), 0.0);
    return sum / static_cast<double>(partition.day_count);
}

DailyMoments mean_daily_moments(const DailyPartition& partition) {
    DailyMoments out;
    double skew_acc = 0.0;
    double kurt_acc = 0.0;
    long used = 0;
    for (std::size_t d = 0; d < partition.day_count; ++d) {
        const double sd = partition.day_stds[d];
        if (sd == 0.0) {
            ++out.degenerate_days;
            continue;
        }
        const double mean = partition.day_means[d];
        double m3 = 0.0;
        double m4 = 0.0;
        for (double x : partition.day(d)) {
            const double z = (x - mean) / sd;
            const double z2 = z * z;
            m3 += z2 * z;
            m4 += z2 * z2;
        }
        const double t = static_cast<double>(partition.steps_per_day);
        skew_acc += m3 / t;
        kurt_acc += m4 / t - 3.0;
        ++used;
    }
    if (used == 0)
        fail(ErrorCode::AllDaysDegenerate, "every day has zero variance; moments undefined");
    out.skew = skew_acc / static_cast<double>(used);
    out.kurt_excess = kurt_acc / static_cast<double>(used);
    return out;
}

double mean_daily_skew(const DailyPartition& partition) {
    return mean_daily_moments(partition).skew;
}

double mean_daily_kurt(const DailyPartition& partition) {
    return mean_daily_moments(partition).kurt_excess;
}

double mean_ramp(const TimeSeriesProfile& profile) {
    profile.validate();
    const std::size_t n = profile.size();
    if (n < 2) fail(ErrorCode::TooShort, "ramp needs at least two samples");
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        acc += std::abs(profile.values[i] - profile.values[i - 1]);
    return acc / static_cast<double>(n - 1);
}

double ramp_rate_kw_per_min(const TimeSeriesProfile& profile) {
    return mean_ramp(profile) / (profile.dt_hours * 60.0);
}

double mean_daily_entropy_bits(const DailyPartition& partition, const BinPolicy& bins) {
    const int b = bins.day_bins(partition.steps_per_day);
    double acc = 0.0;
    for (std::size_t d = 0; d < partition.day_count; ++d) {
        const Histogram h = histogram_day(partition.day(d), b);
        double e = 0.0;
        for (double p : h.probs)
            if (p > 0.0) e -= p * std::log2(p);
        acc += e;
    }
    return acc / static_cast<double>(partition.day_count);
}

TailSummary extremes_and_quartiles(const DailyPartition& partition) {
    TailSummary out;
    const auto all = partition.all();
    const auto [lo, hi] = std::minmax_element(all.begin(), all.end());
    out.c_min = *lo;
    out.c_max = *hi;
    out.q5 = percentile(all, 5.0);
    out.q95 = percentile(all, 95.0);

    double lql_acc = 0.0;
    double uql_acc = 0.0;
    for (std::size_t d = 0; d < partition.day_count; ++d) {
        const auto row = partition.day(d);
        const auto [dlo, dhi] = std::minmax_element(row.begin(), row.end());
        lql_acc += percentile(row, 25.0) - *dlo;
        uql_acc += *dhi - percentile(row, 75.0);
    }
    out.lql = lql_acc / static_cast<double>(partition.day_count);
    out.uql = uql_acc / static_cast<double>(partition.day_count);
    return out;
}

BasefreeReport basefree_report(const TimeSeriesProfile& retained, const DailyPartition& partition,
                               const BinPolicy& bins) {
    BasefreeReport r;
    r.c_annual_kwh = annual_consumption_kwh(retained);
    r.sigma_kw = mean_daily_std(partition);
    try {
        const DailyMoments m = mean_daily_moments(partition);
        r.skew = m.skew;
        r.kurt_excess = m.kurt_excess;
        r.degenerate_days = m.degenerate_days;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::AllDaysDegenerate) throw;
        r.moments_defined = false;
        r.degenerate_days = static_cast<long>(partition.day_count);
    }
    r.ramp_kw = mean_ramp(retained);
    r.ramp_rate_kw_per_min = ramp_rate_kw_per_min(retained);
    r.entropy_bits = mean_daily_entropy_bits(partition, bins);
    const TailSummary t = extremes_and_quartiles(partition);
    r.c_min_kw = t.c_min;
    r.c_max_kw = t.c_max;
    r.q5_kw = t.q5;
    r.q95_kw = t.q95;
    r.lql_kw = t.lql;
    r.uql_kw = t.uql;
    return r;
}

} // namespace nluq
