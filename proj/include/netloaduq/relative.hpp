#pragma once

#include "netloaduq/profile.hpp"

namespace nluq {

/// KLD is strict by default: a day where the base has mass in a bin the net
/// does not cover makes the metric undefined (surfaced with diagnostics)
/// rather than silently huge. Opt-in additive smoothing maps each mass m to
/// (m + eps) / (1 + B*eps) on both sides.
struct KldOptions {
    bool smoothing = false;
    double epsilon = 1e-9;
};

struct KldResult {
    double bits = 0.0;
    KldDiagnostics diag;
};

/// Mean daily KL divergence base||net on a shared per-day grid.
/// Throws UndefinedKldError (carrying diagnostics) in strict mode when any
/// day has a base-mass bin with zero net mass.
KldResult kld(const DailyPartition& base, const DailyPartition& net, int bins,
              const KldOptions& options = {});

/// Mean daily total variation distance, in [0, 1].
double tvd(const DailyPartition& base, const DailyPartition& net, int bins);

/// Mean daily Wasserstein-1 distance via CDF differences on the shared grid,
/// in kW. Discretization error is bounded by the bin width.
double wasserstein(const DailyPartition& base, const DailyPartition& net, int bins);

/// Exact per-day 1-D Wasserstein-1: mean absolute difference of sorted
/// samples. Secondary route for cross-checking the grid estimate.
double wasserstein_exact(const DailyPartition& base, const DailyPartition& net);

/// Pointwise errors over the full series. Throw LengthMismatch when sample
/// counts or intervals differ.
double mae(const TimeSeriesProfile& base, const TimeSeriesProfile& net);
double rmse(const TimeSeriesProfile& base, const TimeSeriesProfile& net);

struct RelativeReport {
    double kld_bits = 0.0;
    bool kld_defined = true;
    KldDiagnostics kld_diag;
    double tvd = 0.0;
    double wasserstein_kw = 0.0;
    double wasserstein_exact_kw = 0.0;
    double mae_kw = 0.0;
    double rmse_kw = 0.0;
};

struct RelativeOptions {
    int shared_bins = 50;
    KldOptions kld;
};

/// All baseline-dependent and error-based metrics for one base/net pair.
/// An undefined strict KLD is recorded in the report, not thrown.
RelativeReport relative_report(const TimeSeriesProfile& base, const TimeSeriesProfile& net,
                               const DailyPartition& base_part, const DailyPartition& net_part,
                               const RelativeOptions& options = {});

} // namespace nluq
