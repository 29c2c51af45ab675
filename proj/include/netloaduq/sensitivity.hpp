#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netloaduq/scenario.hpp"

namespace nluq {

/// First-order variance share per input for one metric. Exact ANOVA on the
/// discrete grid (inputs uniform over their levels), no Monte Carlo noise.
struct SensitivityResult {
    bool defined = true;
    double s_pv = 0.0;
    double s_ev = 0.0;
    std::optional<double> s_base;
    double residual = 0.0; // 1 - sum of first-order shares (interaction)
    std::size_t samples = 0;
    std::string note;
};

/// Var_{X_k}(E[Y | X_k]) / Var(Y) for each axis of a full-factorial tensor.
/// data is row-major over dims. Throws ZeroVariance when Var(Y) vanishes and
/// InvalidArgument on shape mismatch or axes with fewer than 2 levels.
struct AnovaResult {
    std::vector<double> first_order;
    double variance = 0.0;
    std::size_t cells = 0;
};
AnovaResult first_order_anova(std::span<const double> data, std::span<const std::size_t> dims);

/// Two-input indices from a metric grid laid out [pv][ev].
SensitivityResult first_order_indices_grid(const std::vector<std::vector<double>>& metric_grid);

/// Indices for every metric of a finished sweep. Metrics undefined in any
/// cell (strict KLD) or constant over the grid are reported as undefined with
/// a note instead of being imputed.
std::map<std::string, SensitivityResult> sensitivity_from_sweep(const SweepResult& sweep);

/// Three-input variant treating base-load identity as a uniform categorical
/// input: full factorial over (profile x pv x ev) with one fixed charging
/// behavior per seed.
std::map<std::string, SensitivityResult> first_order_indices_with_baseload(
    const std::vector<const TimeSeriesProfile*>& consumer_pool, const PvProfile& pv_norm,
    const EvModelParams& params, const std::vector<double>& pv_levels,
    const std::vector<double>& ev_levels, std::uint64_t seed, const MetricOptions& options,
    int threads = 1);

/// Per-consumer two-input indices plus their per-metric group mean (defined
/// metrics only).
struct PerConsumerIndices {
    std::vector<std::map<std::string, SensitivityResult>> per_consumer;
    std::map<std::string, SensitivityResult> group_mean;
};
PerConsumerIndices per_consumer_indices(const std::vector<const TimeSeriesProfile*>& consumers,
                                        const PvProfile& pv_norm, const EvModelParams& params,
                                        const std::vector<double>& pv_levels,
                                        const std::vector<double>& ev_levels, std::uint64_t seed,
                                        const MetricOptions& options, int threads = 1);

} // namespace nluq
