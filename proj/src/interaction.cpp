#include "netloaduq/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netloaduq/parallel.hpp"
#include "netloaduq/rng.hpp"

namespace nluq {

double reduction_percent(const InteractionInputs& in, double tol_rel) {
    const double expected = in.pv_only + in.ev_only - in.base_value;
    const double scale = std::max({std::abs(in.base_value), std::abs(in.pv_only),
                                   std::abs(in.ev_only), 1.0});
    if (std::abs(expected) < tol_rel * scale)
        fail(ErrorCode::NearZeroDenominator,
             "stacked single-technology value is too close to zero");
    return (in.joint - expected) / std::abs(expected) * 100.0;
}

const std::vector<std::string>& default_interaction_metrics() {
    static const std::vector<std::string> names = {
        "c_annual_kwh", "sigma_kw", "ramp_kw", "c_min_kw", "c_max_kw", "q5_kw",
        "q95_kw",       "lql_kw",   "uql_kw",  "wasserstein_kw", "mae_kw", "rmse_kw",
    };
    return names;
}

namespace {

struct DrawRecord {
    InteractionInputs inputs;
    bool values_defined = false;
    double reduction = 0.0;
    bool reduction_defined = false;
};

void validate_metric_names(const std::vector<std::string>& metrics) {
    const MetricReport probe;
    for (const std::string& name : metrics) {
        double unused = 0.0;
        probe.try_get(name, unused); // throws InvalidArgument for unknown names
    }
}

TimeSeriesProfile zeros_like(const TimeSeriesProfile& p) {
    TimeSeriesProfile z = p;
    std::fill(z.values.begin(), z.values.end(), 0.0);
    return z;
}

} // namespace

std::map<std::string, ReductionStats> monte_carlo_interaction(
    const std::vector<const TimeSeriesProfile*>& pool, const PvProfile& pv_norm,
    const EvModelParams& params, double pv_kwp, double ev_kw,
    const std::vector<std::string>& metrics, std::size_t n_iter, std::uint64_t seed,
    const MetricOptions& options, int threads) {
    if (pool.empty()) fail(ErrorCode::EmptyInput, "consumer pool is empty");
    if (metrics.empty()) fail(ErrorCode::InvalidArgument, "no metrics requested");
    if (n_iter == 0) fail(ErrorCode::InvalidArgument, "need at least one draw");
    validate_metric_names(metrics);
    params.validate();

    // Per-pool-entry state shared by every draw.
    std::vector<DailyPartition> parts;
    std::vector<TimeSeriesProfile> retained;
    parts.reserve(pool.size());
    retained.reserve(pool.size());
    for (const TimeSeriesProfile* base : pool) {
        DailyPartition part = partition_daily(*base);
        TimeSeriesProfile ret = retained_profile(*base, part);
        pv_norm.validate_alignment(ret);
        parts.push_back(std::move(part));
        retained.push_back(std::move(ret));
    }
    const TimeSeriesProfile pv_scaled = scale_pv(pv_norm, pv_kwp);

    std::vector<std::vector<DrawRecord>> records(
        metrics.size(), std::vector<DrawRecord>(n_iter));

    parallel_for(n_iter, threads, [&](std::size_t it) {
        // Independent stream per draw: pick a base profile, then seed one EV
        // realization that is reused in the EV-only and joint scenarios.
        Rng rng(derive_stream(seed, static_cast<std::uint64_t>(it)));
        const std::size_t bi = rng.index(pool.size());
        const std::uint64_t ev_seed = rng.next_u64();

        const TimeSeriesProfile& base = retained[bi];
        const DailyPartition& base_part = parts[bi];
        const TimeSeriesProfile ev =
            synthesize_ev_year(params, ev_kw, base_part.day_count, base_part.dt_hours,
                               base_part.first_day_start, ev_seed);
        const TimeSeriesProfile no_ev = zeros_like(base);
        const TimeSeriesProfile no_pv = zeros_like(base);

        const ScenarioSpec spec{"pool:" + std::to_string(bi), pv_kwp, ev_kw, ev_seed};
        const MetricReport rep_b =
            evaluate_pair(base, base_part, base, base_part, spec, options);

        auto evaluate = [&](const TimeSeriesProfile& ev_c, const TimeSeriesProfile& pv_c) {
            NetLoadScenario sc = compose_net(base, ev_c, pv_c, spec);
            const DailyPartition net_part = partition_daily(sc.net);
            return evaluate_pair(base, base_part, sc.net, net_part, sc.spec, options);
        };
        const MetricReport rep_x = evaluate(no_ev, pv_scaled);
        const MetricReport rep_y = evaluate(ev, no_pv);
        const MetricReport rep_z = evaluate(ev, pv_scaled);

        for (std::size_t m = 0; m < metrics.size(); ++m) {
            DrawRecord& rec = records[m][it];
            InteractionInputs& in = rec.inputs;
            const bool ok = rep_b.try_get(metrics[m], in.base_value) &&
                            rep_x.try_get(metrics[m], in.pv_only) &&
                            rep_y.try_get(metrics[m], in.ev_only) &&
                            rep_z.try_get(metrics[m], in.joint);
            if (!ok) continue;
            rec.values_defined = true;
            try {
                rec.reduction = reduction_percent(in);
                rec.reduction_defined = true;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NearZeroDenominator) throw;
            }
        }
    });

    std::map<std::string, ReductionStats> out;
    for (std::size_t m = 0; m < metrics.size(); ++m) {
        ReductionStats st;
        st.draws = n_iter;
        std::vector<double> reductions;
        reductions.reserve(n_iter);
        InteractionInputs mean_in;
        std::size_t defined_values = 0;
        for (const DrawRecord& rec : records[m]) {
            if (rec.values_defined) {
                mean_in.base_value += rec.inputs.base_value;
                mean_in.pv_only += rec.inputs.pv_only;
                mean_in.ev_only += rec.inputs.ev_only;
                mean_in.joint += rec.inputs.joint;
                ++defined_values;
            }
            if (rec.reduction_defined) reductions.push_back(rec.reduction);
        }
        st.excluded = n_iter - reductions.size();
        if (!reductions.empty()) {
            const double n = static_cast<double>(reductions.size());
            st.mean = std::accumulate(reductions.begin(), reductions.end(), 0.0) / n;
            double var = 0.0;
            for (double r : reductions) {
                const double d = r - st.mean;
                var += d * d;
            }
            st.stddev = std::sqrt(var / n);
            st.q25 = percentile(reductions, 25.0);
            st.median = percentile(reductions, 50.0);
            st.q75 = percentile(reductions, 75.0);
        }
        if (defined_values > 0) {
            const double n = static_cast<double>(defined_values);
            mean_in.base_value /= n;
            mean_in.pv_only /= n;
            mean_in.ev_only /= n;
            mean_in.joint /= n;
            try {
                st.reduction_of_means = reduction_percent(mean_in);
                st.reduction_of_means_defined = true;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NearZeroDenominator) throw;
            }
        }
        out.emplace(metrics[m], std::move(st));
    }
    return out;
}

LinearFit median_regression(std::span<const double> levels, std::span<const double> medians) {
    if (levels.size() != medians.size())
        fail(ErrorCode::InvalidArgument, "level and median arrays disagree in length");
    if (levels.size() < 2) fail(ErrorCode::TooFewLevels, "regression needs at least two points");
    const double n = static_cast<double>(levels.size());
    const double mx = std::accumulate(levels.begin(), levels.end(), 0.0) / n;
    const double my = std::accumulate(medians.begin(), medians.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double dx = levels[i] - mx;
        sxx += dx * dx;
        sxy += dx * (medians[i] - my);
    }
    if (sxx <= 0.0) fail(ErrorCode::TooFewLevels, "regression needs two distinct levels");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

} // namespace nluq
