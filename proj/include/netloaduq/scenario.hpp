#pragma once

#include <cstdint>
#include <vector>

#include "netloaduq/profile.hpp"
#include "netloaduq/report.hpp"

namespace nluq {

/// Generation profile normalized to installed capacity (kW per kWp, >= 0).
/// Must be sample-aligned with the base profile it is applied to.
struct PvProfile {
    TimeSeriesProfile profile;

    void validate() const;
    void validate_alignment(const TimeSeriesProfile& base) const;
};

/// Pointwise kwp * normalized value. Annual PV energy scales linearly in kwp.
TimeSeriesProfile scale_pv(const PvProfile& pv_norm, double kwp);

/// Mixture of truncated normals over hour-of-day [0, 24). A zero-std
/// component is a point mass at its mean.
struct StartTimeMixture {
    std::vector<double> weights;
    std::vector<double> means_h;
    std::vector<double> stds_h;

    void validate() const;
};

/// Parametric charging-session model. The shipped presets are documented
/// stand-ins (evening-peaked residential, work-hours office); every field is
/// configurable so users with real session data can refit.
struct EvModelParams {
    StartTimeMixture start_time;
    double session_energy_mean_kwh = 10.0; // mean of the lognormal, not of the log
    double session_energy_sigma_log = 0.5; // std of log-energy
    double max_session_hours = 12.0;
    double battery_capacity_kwh = 60.0;
    std::vector<int> session_counts{0, 1};
    std::vector<double> session_count_probs{0.3, 0.7};

    void validate() const;

    static EvModelParams residential();
    static EvModelParams office();
};

/// Draws daily charging sessions and accumulates constant-power rectangles
/// at the charger cap. Session energy is capped by the battery and by the
/// maximum session duration; sessions crossing midnight spill into the next
/// day. Deterministic for a fixed seed: each day gets its own RNG stream and
/// the behavioral draws do not depend on ev_kw, so raising the charger level
/// re-powers the same sessions.
TimeSeriesProfile synthesize_ev_year(const EvModelParams& params, double ev_kw, std::size_t days,
                                     double dt_hours, CivilTime start, std::uint64_t seed);

/// Net Load = Base Load + EV Charging - PV Generation, with the components
/// retained so relative metrics can look back at the base.
struct NetLoadScenario {
    TimeSeriesProfile base;
    TimeSeriesProfile ev;
    TimeSeriesProfile pv;
    TimeSeriesProfile net;
    ScenarioSpec spec;
};

NetLoadScenario compose_net(TimeSeriesProfile base, TimeSeriesProfile ev, TimeSeriesProfile pv_scaled,
                            ScenarioSpec spec);

/// Full-factorial scenario grid with every metric evaluated per cell. The
/// charging behavior is fixed by the seed across the whole grid; only the
/// charger power cap changes along the EV axis.
struct SweepResult {
    std::vector<double> pv_levels;
    std::vector<double> ev_levels;
    std::vector<MetricReport> cells; // pv-major

    const MetricReport& at(std::size_t i_pv, std::size_t j_ev) const {
        return cells[i_pv * ev_levels.size() + j_ev];
    }
};

SweepResult sweep(const TimeSeriesProfile& base_retained, const DailyPartition& base_part,
                  const PvProfile& pv_norm, const EvModelParams& params,
                  std::vector<double> pv_levels, std::vector<double> ev_levels, std::uint64_t seed,
                  const MetricOptions& options, int threads = 1);

} // namespace nluq
