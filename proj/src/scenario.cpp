#include "netloaduq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "netloaduq/parallel.hpp"
#include "netloaduq/rng.hpp"

namespace nluq {

void PvProfile::validate() const {
    profile.validate();
    for (std::size_t i = 0; i < profile.size(); ++i)
        if (profile.values[i] < 0.0)
            fail(ErrorCode::InvalidParams,
                 "normalized PV must be non-negative (sample " + std::to_string(i) + ")");
}

void PvProfile::validate_alignment(const TimeSeriesProfile& base) const {
    if (profile.size() != base.size())
        fail(ErrorCode::AlignmentError,
             "PV profile has " + std::to_string(profile.size()) + " samples, base has " +
                 std::to_string(base.size()));
    if (std::abs(profile.dt_hours - base.dt_hours) > 1e-12)
        fail(ErrorCode::AlignmentError, "PV and base sampling intervals differ");
    if (!(profile.start == base.start))
        fail(ErrorCode::AlignmentError, "PV and base series start at different times");
}

TimeSeriesProfile scale_pv(const PvProfile& pv_norm, double kwp) {
    pv_norm.validate();
    if (kwp < 0.0) fail(ErrorCode::InvalidParams, "PV capacity must be non-negative");
    TimeSeriesProfile out = pv_norm.profile;
    for (double& v : out.values) v *= kwp;
    return out;
}

void StartTimeMixture::validate() const {
    if (weights.empty() || weights.size() != means_h.size() || weights.size() != stds_h.size())
        fail(ErrorCode::InvalidParams, "start-time mixture component arrays disagree in length");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!std::isfinite(weights[i]) || weights[i] < 0.0)
            fail(ErrorCode::InvalidParams, "mixture weights must be finite and non-negative");
        if (!std::isfinite(means_h[i]) || means_h[i] < 0.0 || means_h[i] >= 24.0)
            fail(ErrorCode::InvalidParams, "mixture means must lie in [0, 24) hours");
        if (!std::isfinite(stds_h[i]) || stds_h[i] < 0.0)
            fail(ErrorCode::InvalidParams, "mixture stds must be finite and non-negative");
        sum += weights[i];
    }
    if (!(sum > 0.0)) fail(ErrorCode::InvalidParams, "mixture weights sum to zero");
}

void EvModelParams::validate() const {
    start_time.validate();
    if (!(session_energy_mean_kwh > 0.0))
        fail(ErrorCode::InvalidParams, "session energy mean must be positive");
    if (!(session_energy_sigma_log >= 0.0) || !std::isfinite(session_energy_sigma_log))
        fail(ErrorCode::InvalidParams, "session energy log-std must be non-negative");
    if (!(max_session_hours > 0.0))
        fail(ErrorCode::InvalidParams, "maximum session duration must be positive");
    if (!(battery_capacity_kwh > 0.0))
        fail(ErrorCode::InvalidParams, "battery capacity must be positive");
    if (session_counts.empty() || session_counts.size() != session_count_probs.size())
        fail(ErrorCode::InvalidParams, "session count distribution arrays disagree in length");
    double sum = 0.0;
    for (std::size_t i = 0; i < session_counts.size(); ++i) {
        if (session_counts[i] < 0)
            fail(ErrorCode::InvalidParams, "session counts must be non-negative");
        if (!std::isfinite(session_count_probs[i]) || session_count_probs[i] < 0.0)
            fail(ErrorCode::InvalidParams, "session count probabilities must be non-negative");
        sum += session_count_probs[i];
    }
    if (!(sum > 0.0)) fail(ErrorCode::InvalidParams, "session count probabilities sum to zero");
}

EvModelParams EvModelParams::residential() {
    EvModelParams p;
    p.start_time.weights = {0.7, 0.3};
    p.start_time.means_h = {18.5, 21.0};
    p.start_time.stds_h = {1.5, 1.0};
    p.session_energy_mean_kwh = 10.0;
    p.session_energy_sigma_log = 0.5;
    p.max_session_hours = 12.0;
    p.battery_capacity_kwh = 60.0;
    p.session_counts = {0, 1};
    p.session_count_probs = {0.3, 0.7};
    return p;
}

EvModelParams EvModelParams::office() {
    EvModelParams p;
    p.start_time.weights = {0.8, 0.2};
    p.start_time.means_h = {8.5, 13.0};
    p.start_time.stds_h = {1.0, 1.5};
    p.session_energy_mean_kwh = 8.0;
    p.session_energy_sigma_log = 0.4;
    p.max_session_hours = 9.0;
    p.battery_capacity_kwh = 60.0;
    p.session_counts = {0, 1, 2, 3};
    p.session_count_probs = {0.2, 0.4, 0.3, 0.1};
    return p;
}

namespace {

double draw_start_hour(Rng& rng, const StartTimeMixture& mix) {
    const std::size_t c = rng.discrete(mix.weights);
    const double mean = mix.means_h[c];
    const double sd = mix.stds_h[c];
    if (sd == 0.0) return mean;
    for (;;) {
        const double h = rng.normal(mean, sd);
        if (h >= 0.0 && h < 24.0) return h;
    }
}

double draw_session_energy(Rng& rng, const EvModelParams& params) {
    double e;
    if (params.session_energy_sigma_log == 0.0) {
        e = params.session_energy_mean_kwh;
    } else {
        const double sigma = params.session_energy_sigma_log;
        const double mu = std::log(params.session_energy_mean_kwh) - 0.5 * sigma * sigma;
        e = rng.lognormal(mu, sigma);
    }
    return std::min(e, params.battery_capacity_kwh);
}

/// Adds a constant-power block over [begin_h, end_h) (hours from series
/// start), splitting power across partially covered samples.
void add_rectangle(std::vector<double>& values, double dt_hours, double power_kw, double begin_h,
                   double end_h) {
    const double series_end = static_cast<double>(values.size()) * dt_hours;
    begin_h = std::max(begin_h, 0.0);
    end_h = std::min(end_h, series_end);
    if (!(end_h > begin_h)) return;
    auto first = static_cast<std::size_t>(begin_h / dt_hours);
    for (std::size_t i = first; i < values.size(); ++i) {
        const double cell_lo = static_cast<double>(i) * dt_hours;
        if (cell_lo >= end_h) break;
        const double cell_hi = cell_lo + dt_hours;
        const double overlap = std::min(end_h, cell_hi) - std::max(begin_h, cell_lo);
        if (overlap > 0.0) values[i] += power_kw * overlap / dt_hours;
    }
}

} // namespace

TimeSeriesProfile synthesize_ev_year(const EvModelParams& params, double ev_kw, std::size_t days,
                                     double dt_hours, CivilTime start, std::uint64_t seed) {
    params.validate();
    if (ev_kw < 0.0) fail(ErrorCode::InvalidParams, "charger power must be non-negative");
    if (days == 0) fail(ErrorCode::InvalidParams, "EV synthesis needs at least one day");
    if (!(dt_hours > 0.0)) fail(ErrorCode::InvalidArgument, "sampling interval must be positive");
    const double steps = 24.0 / dt_hours;
    const auto per_day = static_cast<std::size_t>(std::llround(steps));
    if (per_day < 1 || std::abs(static_cast<double>(per_day) * dt_hours - 24.0) > 1e-9)
        fail(ErrorCode::NonIntegerStepsPerDay,
             "24 h is not an integer number of steps at dt = " + std::to_string(dt_hours) + " h");

    TimeSeriesProfile out;
    out.dt_hours = dt_hours;
    out.start = start;
    out.values.assign(days * per_day, 0.0);

    for (std::size_t d = 0; d < days; ++d) {
        // One stream per day; the draw order never depends on ev_kw, so the
        // same seed yields the same sessions at every charger level.
        Rng rng(derive_stream(seed, static_cast<std::uint64_t>(d)));
        const int sessions = params.session_counts[rng.discrete(params.session_count_probs)];
        for (int s = 0; s < sessions; ++s) {
            const double start_h = draw_start_hour(rng, params.start_time);
            const double energy_kwh = draw_session_energy(rng, params);
            if (ev_kw == 0.0) continue;
            const double duration_h = std::min(energy_kwh / ev_kw, params.max_session_hours);
            const double begin_h = static_cast<double>(d) * 24.0 + start_h;
            add_rectangle(out.values, dt_hours, ev_kw, begin_h, begin_h + duration_h);
        }
    }
    return out;
}

NetLoadScenario compose_net(TimeSeriesProfile base, TimeSeriesProfile ev,
                            TimeSeriesProfile pv_scaled, ScenarioSpec spec) {
    base.validate();
    if (ev.size() != base.size() || pv_scaled.size() != base.size())
        fail(ErrorCode::AlignmentError, "scenario components disagree in length");
    if (std::abs(ev.dt_hours - base.dt_hours) > 1e-12 ||
        std::abs(pv_scaled.dt_hours - base.dt_hours) > 1e-12)
        fail(ErrorCode::AlignmentError, "scenario components disagree in sampling interval");

    NetLoadScenario sc;
    sc.net = base;
    for (std::size_t i = 0; i < base.size(); ++i)
        sc.net.values[i] = base.values[i] + ev.values[i] - pv_scaled.values[i];
    sc.base = std::move(base);
    sc.ev = std::move(ev);
    sc.pv = std::move(pv_scaled);
    sc.spec = std::move(spec);
    return sc;
}

SweepResult sweep(const TimeSeriesProfile& base_retained, const DailyPartition& base_part,
                  const PvProfile& pv_norm, const EvModelParams& params,
                  std::vector<double> pv_levels, std::vector<double> ev_levels, std::uint64_t seed,
                  const MetricOptions& options, int threads) {
    if (pv_levels.empty() || ev_levels.empty())
        fail(ErrorCode::InvalidArgument, "sweep needs at least one level per axis");
    pv_norm.validate_alignment(base_retained);

    SweepResult result;
    result.pv_levels = std::move(pv_levels);
    result.ev_levels = std::move(ev_levels);
    const std::size_t np = result.pv_levels.size();
    const std::size_t ne = result.ev_levels.size();

    // Components are shared across the grid: one PV series per PV level, one
    // EV series per charger level (same sessions, different power).
    std::vector<TimeSeriesProfile> pv_scaled(np);
    for (std::size_t i = 0; i < np; ++i) pv_scaled[i] = scale_pv(pv_norm, result.pv_levels[i]);
    std::vector<TimeSeriesProfile> ev_series(ne);
    for (std::size_t j = 0; j < ne; ++j)
        ev_series[j] = synthesize_ev_year(params, result.ev_levels[j], base_part.day_count,
                                          base_part.dt_hours, base_part.first_day_start, seed);

    result.cells.resize(np * ne);
    parallel_for(np * ne, threads, [&](std::size_t cell) {
        const std::size_t i = cell / ne;
        const std::size_t j = cell % ne;
        NetLoadScenario sc =
            compose_net(base_retained, ev_series[j], pv_scaled[i],
                        ScenarioSpec{"base", result.pv_levels[i], result.ev_levels[j], seed});
        const DailyPartition net_part = partition_daily(sc.net);
        result.cells[cell] =
            evaluate_pair(sc.base, base_part, sc.net, net_part, sc.spec, options);
    });
    return result;
}

} // namespace nluq
