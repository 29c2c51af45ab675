#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "netloaduq/scenario.hpp"

namespace nluq {

/// One metric evaluated four ways from the same base profile, EV realization
/// and PV level: base alone, PV only, EV only, and both together.
struct InteractionInputs {
    double base_value = 0.0; // b
    double pv_only = 0.0;    // x
    double ev_only = 0.0;    // y
    double joint = 0.0;      // z
};

/// Signed percentage (z - (x + y - b)) / |x + y - b| * 100. Negative means
/// the joint net load shrinks the metric versus stacking the separate
/// effects. Throws NearZeroDenominator when |x + y - b| falls below
/// tol_rel * max(|b|, |x|, |y|, 1).
double reduction_percent(const InteractionInputs& in, double tol_rel = 1e-9);

/// Boxplot statistics of the reductions across Monte Carlo draws, plus the
/// same formula applied to the mean b/x/y/z (the two readings of "mean
/// reduction" are both reported).
struct ReductionStats {
    std::size_t draws = 0;
    std::size_t excluded = 0; // near-zero denominators or undefined metric draws
    double mean = 0.0;        // mean of per-draw reductions
    double stddev = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double reduction_of_means = 0.0;
    bool reduction_of_means_defined = false;
};

/// Draws (base profile, EV behavior) pairs, computes b/x/y/z per metric with
/// the same EV realization reused in y and z, and aggregates reductions.
/// Deterministic for a fixed seed; draws are independent streams.
std::map<std::string, ReductionStats> monte_carlo_interaction(
    const std::vector<const TimeSeriesProfile*>& pool, const PvProfile& pv_norm,
    const EvModelParams& params, double pv_kwp, double ev_kw,
    const std::vector<std::string>& metrics, std::size_t n_iter, std::uint64_t seed,
    const MetricOptions& options, int threads = 1);

/// Ordinary least squares through (level, median) pairs. Throws TooFewLevels
/// below 2 points.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LinearFit median_regression(std::span<const double> levels, std::span<const double> medians);

/// Metrics the interaction study reports by default (the distance and
/// dispersion metrics; skew/kurt/entropy/KLD/TVD are excluded).
const std::vector<std::string>& default_interaction_metrics();

} // namespace nluq
