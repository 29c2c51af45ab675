#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "netloaduq/civil_time.hpp"
#include "netloaduq/error.hpp"

namespace nluq {

/// Uniformly sampled power series in kW. Values may be negative (net metering).
/// Immutable by convention once validated; all operations below are pure.
struct TimeSeriesProfile {
    std::vector<double> values; // kW
    double dt_hours = 0.25;
    CivilTime start{};

    std::size_t size() const { return values.size(); }
    double duration_hours() const { return static_cast<double>(values.size()) * dt_hours; }

    /// Sampling interval in whole seconds (sub-second resolutions unsupported).
    std::int64_t dt_seconds() const;

    /// Throws on empty data, non-positive dt, or non-finite samples.
    void validate() const;
};

TimeSeriesProfile make_profile(std::vector<double> values, double dt_hours, CivilTime start = {});

/// The same samples reshaped as D days x T steps, the basis of all per-day
/// statistics. Partial leading/trailing days are dropped, never padded.
struct DailyPartition {
    std::size_t day_count = 0;     // D
    std::size_t steps_per_day = 0; // T
    double dt_hours = 0.0;
    std::vector<double> data; // D*T, row-major
    std::vector<double> day_means;
    std::vector<double> day_stds; // population form, divisor T
    std::size_t leading_skipped = 0;
    std::size_t trailing_dropped = 0;
    CivilTime first_day_start{};

    std::span<const double> day(std::size_t d) const {
        return {data.data() + d * steps_per_day, steps_per_day};
    }
    std::span<const double> all() const { return {data.data(), data.size()}; }
};

/// Rows start at the first sample at or after the first midnight of the
/// profile's clock; whatever does not fill a whole day at either end is
/// dropped. Throws NonIntegerStepsPerDay / EmptyPartition.
DailyPartition partition_daily(const TimeSeriesProfile& profile);

/// The window the partition kept, as a profile of its own (starts at midnight,
/// exactly D*T samples). Every per-scenario metric is computed on this window
/// so all metrics see the same data.
TimeSeriesProfile retained_profile(const TimeSeriesProfile& profile, const DailyPartition& partition);

struct PercentileSpec {
    double rank = 50.0; // percent, 0..100
};

/// Linear interpolation between closest ranks (the common "type 7"
/// convention). percentile(v, 0) = min, percentile(v, 100) = max.
double percentile(std::span<const double> values, double rank_percent);
double percentile(std::span<const double> values, PercentileSpec spec);

/// Discrete PDF over a uniform bin grid; masses sum to 1.
struct Histogram {
    std::vector<double> edges; // B+1, strictly increasing
    std::vector<double> probs; // B, sum to 1
    double bin_width = 0.0;

    std::size_t bins() const { return probs.size(); }
    void validate() const;
};

struct CumulativeHistogram {
    std::vector<double> edges;
    std::vector<double> cums; // non-decreasing, last == 1
    double bin_width = 0.0;
};

CumulativeHistogram cumulative(const Histogram& h);

/// Bin-count configuration. Per-day entropy bins default to ceil(sqrt(T));
/// shared base/net grids default to 50 bins. Both overridable.
struct BinPolicy {
    int shared_bins = 50;
    int day_bins_override = 0; // 0 -> ceil(sqrt(T))

    int day_bins(std::size_t steps_per_day) const;
};

/// Histogram over [min, max] of the given values. A zero-range day collapses
/// to a single bin of width 1 kW carrying all mass.
Histogram histogram_day(std::span<const double> day_values, int bins);

/// Histogram over an explicit [lo, hi] range (values outside are clamped into
/// the edge bins; callers pass the true range).
Histogram histogram_range(std::span<const double> values, double lo, double hi, int bins);

/// Both days binned on one uniform grid spanning the union of their ranges,
/// so mass the net load places outside the base range stays representable.
std::pair<Histogram, Histogram> shared_histogram_pair(std::span<const double> base_day,
                                                      std::span<const double> net_day, int bins);

/// Block-mean downsampling to new_dt (an integer multiple of dt). Trailing
/// samples that do not fill a block are dropped; energy of the retained
/// window is preserved exactly.
TimeSeriesProfile resample(const TimeSeriesProfile& profile, double new_dt_hours);

} // namespace nluq
