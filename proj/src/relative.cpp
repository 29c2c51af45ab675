#include "netloaduq/relative.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace nluq {

namespace {

void check_compatible(const DailyPartition& base, const DailyPartition& net) {
    if (base.day_count != net.day_count || base.steps_per_day != net.steps_per_day ||
        std::abs(base.dt_hours - net.dt_hours) > 1e-12)
        fail(ErrorCode::MismatchedPartitions,
             "base and net partitions disagree in shape (" + std::to_string(base.day_count) +
                 "x" + std::to_string(base.steps_per_day) + " vs " +
                 std::to_string(net.day_count) + "x" + std::to_string(net.steps_per_day) + ")");
}

std::vector<double> smoothed(const std::vector<double>& probs, double eps) {
    const double denom = 1.0 + static_cast<double>(probs.size()) * eps;
    std::vector<double> out(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) out[i] = (probs[i] + eps) / denom;
    return out;
}

} // namespace

KldResult kld(const DailyPartition& base, const DailyPartition& net, int bins,
              const KldOptions& options) {
    check_compatible(base, net);
    KldResult result;
    double acc = 0.0;
    for (std::size_t d = 0; d < base.day_count; ++d) {
        auto [hp, hq] = shared_histogram_pair(base.day(d), net.day(d), bins);
        bool day_flagged = false;
        bool day_undefined = false;
        for (std::size_t i = 0; i < hp.probs.size(); ++i) {
            const bool p_only = hp.probs[i] > 0.0 && hq.probs[i] == 0.0;
            const bool q_only = hq.probs[i] > 0.0 && hp.probs[i] == 0.0;
            if (p_only || q_only) {
                ++result.diag.problem_bins;
                day_flagged = true;
            }
            if (p_only) day_undefined = true;
        }
        if (day_flagged) ++result.diag.days_affected;
        if (day_undefined) ++result.diag.undefined_days;

        if (!options.smoothing && day_undefined) continue; // day is fatal; throw below
        const std::vector<double> p =
            options.smoothing ? smoothed(hp.probs, options.epsilon) : hp.probs;
        const std::vector<double> q =
            options.smoothing ? smoothed(hq.probs, options.epsilon) : hq.probs;
        double day_kld = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0.0) day_kld += p[i] * std::log2(p[i] / q[i]);
        acc += day_kld;
    }
    if (!options.smoothing && result.diag.undefined_days > 0)
        throw UndefinedKldError("base has mass where net has none on " +
                                    std::to_string(result.diag.undefined_days) + " day(s)",
                                result.diag);
    result.bits = acc / static_cast<double>(base.day_count);
    return result;
}

double tvd(const DailyPartition& base, const DailyPartition& net, int bins) {
    check_compatible(base, net);
    double acc = 0.0;
    for (std::size_t d = 0; d < base.day_count; ++d) {
        const auto [hp, hq] = shared_histogram_pair(base.day(d), net.day(d), bins);
        double l1 = 0.0;
        for (std::size_t i = 0; i < hp.probs.size(); ++i)
            l1 += std::abs(hp.probs[i] - hq.probs[i]);
        acc += 0.5 * l1;
    }
    return acc / static_cast<double>(base.day_count);
}

double wasserstein(const DailyPartition& base, const DailyPartition& net, int bins) {
    check_compatible(base, net);
    double acc = 0.0;
    for (std::size_t d = 0; d < base.day_count; ++d) {
        const auto [hp, hq] = shared_histogram_pair(base.day(d), net.day(d), bins);
        const CumulativeHistogram cp = cumulative(hp);
        const CumulativeHistogram cq = cumulative(hq);
        double day_w = 0.0;
        for (std::size_t i = 0; i < cp.cums.size(); ++i)
            day_w += std::abs(cp.cums[i] - cq.cums[i]) * cp.bin_width;
        acc += day_w;
    }
    return acc / static_cast<double>(base.day_count);
}

double wasserstein_exact(const DailyPartition& base, const DailyPartition& net) {
    check_compatible(base, net);
    double acc = 0.0;
    std::vector<double> p;
    std::vector<double> q;
    for (std::size_t d = 0; d < base.day_count; ++d) {
        const auto bp = base.day(d);
        const auto nq = net.day(d);
        p.assign(bp.begin(), bp.end());
        q.assign(nq.begin(), nq.end());
        std::sort(p.begin(), p.end());
        std::sort(q.begin(), q.end());
        double day_w = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) day_w += std::abs(p[i] - q[i]);
        acc += day_w / static_cast<double>(p.size());
    }
    return acc / static_cast<double>(base.day_count);
}

namespace {

void check_same_shape(const TimeSeriesProfile& base, const TimeSeriesProfile& net) {
    if (base.size() != net.size())
        fail(ErrorCode::LengthMismatch,
             "series lengths differ: " + std::to_string(base.size()) + " vs " +
                 std::to_string(net.size()));
    if (std::abs(base.dt_hours - net.dt_hours) > 1e-12)
        fail(ErrorCode::LengthMismatch, "series sampling intervals differ");
}

} // namespace

double mae(const TimeSeriesProfile& base, const TimeSeriesProfile& net) {
    check_same_shape(base, net);
    double acc = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i)
        acc += std::abs(net.values[i] - base.values[i]);
    return acc / static_cast<double>(base.size());
}

double rmse(const TimeSeriesProfile& base, const TimeSeriesProfile& net) {
    check_same_shape(base, net);
    double acc = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double d = net.values[i] - base.values[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(base.size()));
}

RelativeReport relative_report(const TimeSeriesProfile& base, const TimeSeriesProfile& net,
                               const DailyPartition& base_part, const DailyPartition& net_part,
                               const RelativeOptions& options) {
    RelativeReport r;
    try {
        const KldResult k = kld(base_part, net_part, options.shared_bins, options.kld);
        r.kld_bits = k.bits;
        r.kld_diag = k.diag;
    } catch (const UndefinedKldError& e) {
        r.kld_defined = false;
        r.kld_diag = e.diagnostics;
    }
    r.tvd = tvd(base_part, net_part, options.shared_bins);
    r.wasserstein_kw = wasserstein(base_part, net_part, options.shared_bins);
    r.wasserstein_exact_kw = wasserstein_exact(base_part, net_part);
    r.mae_kw = mae(base, net);
    r.rmse_kw = rmse(base, net);
    return r;
}

} // namespace nluq
