#include "netloaduq/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace nluq {

std::int64_t TimeSeriesProfile::dt_seconds() const {
    return std::llround(dt_hours * 3600.0);
}

void TimeSeriesProfile::validate() const {
    if (values.empty()) fail(ErrorCode::EmptyInput, "profile has no samples");
    if (!(dt_hours > 0.0)) fail(ErrorCode::InvalidArgument, "sampling interval must be positive");
    const std::int64_t dt_s = dt_seconds();
    if (dt_s < 1 || std::abs(dt_hours * 3600.0 - static_cast<double>(dt_s)) > 1e-6)
        fail(ErrorCode::InvalidArgument, "sampling interval must be a whole number of seconds");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            fail(ErrorCode::NonFiniteValue, "non-finite sample at index " + std::to_string(i));
}

TimeSeriesProfile make_profile(std::vector<double> values, double dt_hours, CivilTime start) {
    TimeSeriesProfile p{std::move(values), dt_hours, start};
    p.validate();
    return p;
}

namespace {

double population_std(std::span<const double> v, double mean) {
    double acc = 0.0;
    for (double x : v) {
        const double d = x - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

} // namespace

DailyPartition partition_daily(const TimeSeriesProfile& profile) {
    profile.validate();
    const double steps = 24.0 / profile.dt_hours;
    const auto T = static_cast<std::size_t>(std::llround(steps));
    if (T < 1 || std::abs(static_cast<double>(T) * profile.dt_hours - 24.0) > 1e-9)
        fail(ErrorCode::NonIntegerStepsPerDay,
             "24 h is not an integer number of steps at dt = " + std::to_string(profile.dt_hours) +
                 " h");

    const std::int64_t dt_s = profile.dt_seconds();
    const std::int64_t tod = seconds_into_day(profile.start);
    std::size_t skip = 0;
    if (tod != 0) {
        const std::int64_t until_midnight = 86400 - tod;
        skip = static_cast<std::size_t>((until_midnight + dt_s - 1) / dt_s);
    }

    const std::size_t n = profile.size();
    if (n <= skip) fail(ErrorCode::EmptyPartition, "profile ends before its first midnight");
    const std::size_t full_days = (n - skip) / T;
    if (full_days == 0) fail(ErrorCode::EmptyPartition, "profile contains no full day");

    DailyPartition part;
    part.day_count = full_days;
    part.steps_per_day = T;
    part.dt_hours = profile.dt_hours;
    part.leading_skipped = skip;
    part.trailing_dropped = n - skip - full_days * T;
    part.data.assign(profile.values.begin() + static_cast<std::ptrdiff_t>(skip),
                     profile.values.begin() + static_cast<std::ptrdiff_t>(skip + full_days * T));
    part.first_day_start =
        from_epoch_seconds(to_epoch_seconds(profile.start) + static_cast<std::int64_t>(skip) * dt_s);

    part.day_means.resize(full_days);
    part.day_stds.resize(full_days);
    for (std::size_t d = 0; d < full_days; ++d) {
        const auto row = part.day(d);
        const double mean =
            std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(T);
        part.day_means[d] = mean;
        part.day_stds[d] = population_std(row, mean);
    }
    return part;
}

TimeSeriesProfile retained_profile(const TimeSeriesProfile& profile, const DailyPartition& partition) {
    TimeSeriesProfile out;
    out.values = partition.data;
    out.dt_hours = profile.dt_hours;
    out.start = partition.first_day_start;
    out.validate();
    return out;
}

double percentile(std::span<const double> values, double rank_percent) {
    if (values.empty()) fail(ErrorCode::EmptyInput, "percentile of empty sequence");
    if (!(rank_percent >= 0.0 && rank_percent <= 100.0))
        fail(ErrorCode::InvalidArgument, "percentile rank must be in [0, 100]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double h = static_cast<double>(n - 1) * rank_percent / 100.0;
    const auto lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double percentile(std::span<const double> values, PercentileSpec spec) {
    return percentile(values, spec.rank);
}

void Histogram::validate() const {
    if (probs.empty() || edges.size() != probs.size() + 1)
        fail(ErrorCode::InvalidArgument, "histogram shape mismatch");
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0) fail(ErrorCode::InvalidArgument, "negative histogram mass");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) fail(ErrorCode::InvalidArgument, "histogram mass not 1");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i]))
            fail(ErrorCode::InvalidArgument, "histogram edges not increasing");
        if (std::abs((edges[i + 1] - edges[i]) - bin_width) > 1e-9 * std::max(1.0, bin_width))
            fail(ErrorCode::InvalidArgument, "histogram grid not uniform");
    }
}

CumulativeHistogram cumulative(const Histogram& h) {
    CumulativeHistogram c;
    c.edges = h.edges;
    c.bin_width = h.bin_width;
    c.cums.resize(h.probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < h.probs.size(); ++i) {
        acc += h.probs[i];
        c.cums[i] = acc;
    }
    return c;
}

int BinPolicy::day_bins(std::size_t steps_per_day) const {
    if (day_bins_override > 0) return day_bins_override;
    return std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(steps_per_day)))));
}

Histogram histogram_range(std::span<const double> values, double lo, double hi, int bins) {
    if (values.empty()) fail(ErrorCode::EmptyInput, "histogram of empty sequence");
    if (bins < 1) fail(ErrorCode::InvalidArgument, "bin count must be positive");

    Histogram h;
    if (!(hi > lo)) {
        // Zero-range data: one bin of width 1 kW carries all mass.
        h.edges = {lo, lo + 1.0};
        h.probs = {1.0};
        h.bin_width = 1.0;
        return h;
    }
    const auto b = static_cast<std::size_t>(bins);
    const double width = (hi - lo) / static_cast<double>(b);
    h.bin_width = width;
    h.edges.resize(b + 1);
    for (std::size_t i = 0; i <= b; ++i)
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(b);
    h.edges[b] = hi;

    std::vector<std::size_t> counts(b, 0);
    for (double v : values) {
        auto idx = static_cast<std::ptrdiff_t>((v - lo) / width);
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(b) - 1);
        ++counts[static_cast<std::size_t>(idx)];
    }
    h.probs.resize(b);
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < b; ++i) h.probs[i] = static_cast<double>(counts[i]) / n;
    return h;
}

Histogram histogram_day(std::span<const double> day_values, int bins) {
    if (day_values.empty()) fail(ErrorCode::EmptyInput, "histogram of empty day");
    const auto [lo, hi] = std::minmax_element(day_values.begin(), day_values.end());
    return histogram_range(day_values, *lo, *hi, bins);
}

std::pair<Histogram, Histogram> shared_histogram_pair(std::span<const double> base_day,
                                                      std::span<const double> net_day, int bins) {
    if (base_day.empty() || net_day.empty())
        fail(ErrorCode::EmptyInput, "shared histogram of empty day");
    const auto [blo, bhi] = std::minmax_element(base_day.begin(), base_day.end());
    const auto [nlo, nhi] = std::minmax_element(net_day.begin(), net_day.end());
    const double lo = std::min(*blo, *nlo);
    const double hi = std::max(*bhi, *nhi);
    return {histogram_range(base_day, lo, hi, bins), histogram_range(net_day, lo, hi, bins)};
}

TimeSeriesProfile resample(const TimeSeriesProfile& profile, double new_dt_hours) {
    profile.validate();
    if (!(new_dt_hours > 0.0))
        fail(ErrorCode::IncompatibleResolution, "target interval must be positive");
    const double ratio = new_dt_hours / profile.dt_hours;
    const auto k = static_cast<std::size_t>(std::llround(ratio));
    if (k < 1 || std::abs(static_cast<double>(k) * profile.dt_hours - new_dt_hours) >
                     1e-9 * std::max(profile.dt_hours, new_dt_hours))
        fail(ErrorCode::IncompatibleResolution,
             "target interval is not an integer multiple of the source interval");

    const std::size_t blocks = profile.size() / k;
    if (blocks == 0)
        fail(ErrorCode::IncompatibleResolution, "profile shorter than one output block");

    TimeSeriesProfile out;
    out.dt_hours = new_dt_hours;
    out.start = profile.start;
    out.values.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += profile.values[b * k + j];
        out.values[b] = acc / static_cast<double>(k);
    }
    return out;
}

} // namespace nluq
