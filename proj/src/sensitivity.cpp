#include "netloaduq/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nluq {

AnovaResult first_order_anova(std::span<const double> data, std::span<const std::size_t> dims) {
    if (dims.empty()) fail(ErrorCode::InvalidArgument, "ANOVA needs at least one input axis");
    std::size_t cells = 1;
    for (std::size_t d : dims) {
        if (d < 2) fail(ErrorCode::TooFewLevels, "every input axis needs at least two levels");
        cells *= d;
    }
    if (data.size() != cells)
        fail(ErrorCode::InvalidArgument, "tensor size does not match the level grid");
    for (double v : data)
        if (!std::isfinite(v)) fail(ErrorCode::NonFiniteValue, "non-finite metric value in grid");

    const double n = static_cast<double>(cells);
    const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
    double var = 0.0;
    for (double v : data) {
        const double d = v - mean;
        var += d * d;
    }
    var /= n;
    if (var <= 1e-24 * std::max(1.0, mean * mean))
        fail(ErrorCode::ZeroVariance, "metric does not vary over the grid");

    AnovaResult out;
    out.variance = var;
    out.cells = cells;
    out.first_order.resize(dims.size());

    // Row-major strides; axis value of a flat cell index is
    // (cell / stride_k) % dims_k.
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];

    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::vector<double> level_sum(dims[k], 0.0);
        for (std::size_t cell = 0; cell < cells; ++cell)
            level_sum[(cell / strides[k]) % dims[k]] += data[cell];
        const double per_level = n / static_cast<double>(dims[k]);
        double var_k = 0.0;
        for (double s : level_sum) {
            const double d = s / per_level - mean;
            var_k += d * d;
        }
        var_k /= static_cast<double>(dims[k]);
        out.first_order[k] = var_k / var;
    }
    return out;
}

SensitivityResult first_order_indices_grid(const std::vector<std::vector<double>>& metric_grid) {
    if (metric_grid.empty() || metric_grid.front().empty())
        fail(ErrorCode::InvalidArgument, "empty metric grid");
    const std::size_t np = metric_grid.size();
    const std::size_t ne = metric_grid.front().size();
    std::vector<double> flat;
    flat.reserve(np * ne);
    for (const auto& row : metric_grid) {
        if (row.size() != ne) fail(ErrorCode::InvalidArgument, "ragged metric grid");
        flat.insert(flat.end(), row.begin(), row.end());
    }

    SensitivityResult r;
    r.samples = np * ne;
    const std::size_t dims[] = {np, ne};
    try {
        const AnovaResult a = first_order_anova(flat, dims);
        r.s_pv = a.first_order[0];
        r.s_ev = a.first_order[1];
        r.residual = 1.0 - r.s_pv - r.s_ev;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroVariance) throw;
        r.defined = false;
        r.note = "metric is constant over the grid";
    }
    return r;
}

std::map<std::string, SensitivityResult> sensitivity_from_sweep(const SweepResult& sweep) {
    if (sweep.pv_levels.size() < 2 || sweep.ev_levels.size() < 2)
        fail(ErrorCode::TooFewLevels, "sensitivity needs at least two levels per axis");
    const std::size_t np = sweep.pv_levels.size();
    const std::size_t ne = sweep.ev_levels.size();

    std::map<std::string, SensitivityResult> out;
    for (const std::string& name : metric_names()) {
        std::vector<std::vector<double>> grid(np, std::vector<double>(ne, 0.0));
        std::size_t undefined_cells = 0;
        for (std::size_t i = 0; i < np; ++i)
            for (std::size_t j = 0; j < ne; ++j)
                if (!sweep.at(i, j).try_get(name, grid[i][j])) ++undefined_cells;
        SensitivityResult r;
        if (undefined_cells > 0) {
            r.defined = false;
            r.samples = np * ne;
            r.note = "metric undefined in " + std::to_string(undefined_cells) + " of " +
                     std::to_string(np * ne) + " cells";
        } else {
            r = first_order_indices_grid(grid);
        }
        out.emplace(name, std::move(r));
    }
    return out;
}

namespace {

struct ConsumerSweep {
    DailyPartition part;
    SweepResult sweep_result;
};

std::vector<ConsumerSweep> sweep_pool(const std::vector<const TimeSeriesProfile*>& pool,
                                      const PvProfile& pv_norm, const EvModelParams& params,
                                      const std::vector<double>& pv_levels,
                                      const std::vector<double>& ev_levels, std::uint64_t seed,
                                      const MetricOptions& options, int threads) {
    if (pool.empty()) fail(ErrorCode::EmptyInput, "consumer pool is empty");
    std::vector<ConsumerSweep> out;
    out.reserve(pool.size());
    for (std::size_t b = 0; b < pool.size(); ++b) {
        const TimeSeriesProfile& base = *pool[b];
        DailyPartition part = partition_daily(base);
        if (b > 0 && (part.day_count != out.front().part.day_count ||
                      part.steps_per_day != out.front().part.steps_per_day ||
                      !(part.first_day_start == out.front().part.first_day_start)))
            fail(ErrorCode::MismatchedPartitions,
                 "consumer pool profiles do not cover the same window");
        TimeSeriesProfile retained = retained_profile(base, part);
        SweepResult sw = sweep(retained, part, pv_norm, params, pv_levels, ev_levels, seed,
                               options, threads);
        ConsumerSweep cs;
        cs.part = std::move(part);
        cs.sweep_result = std::move(sw);
        out.push_back(std::move(cs));
    }
    return out;
}

} // namespace

std::map<std::string, SensitivityResult> first_order_indices_with_baseload(
    const std::vector<const TimeSeriesProfile*>& consumer_pool, const PvProfile& pv_norm,
    const EvModelParams& params, const std::vector<double>& pv_levels,
    const std::vector<double>& ev_levels, std::uint64_t seed, const MetricOptions& options,
    int threads) {
    if (consumer_pool.size() < 2)
        fail(ErrorCode::TooFewLevels, "base-load axis needs at least two profiles");
    if (pv_levels.size() < 2 || ev_levels.size() < 2)
        fail(ErrorCode::TooFewLevels, "sensitivity needs at least two levels per axis");

    const std::vector<ConsumerSweep> sweeps =
        sweep_pool(consumer_pool, pv_norm, params, pv_levels, ev_levels, seed, options, threads);

    const std::size_t nb = consumer_pool.size();
    const std::size_t np = pv_levels.size();
    const std::size_t ne = ev_levels.size();
    const std::size_t dims[] = {nb, np, ne};

    std::map<std::string, SensitivityResult> out;
    for (const std::string& name : metric_names()) {
        std::vector<double> tensor(nb * np * ne, 0.0);
        std::size_t undefined_cells = 0;
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t i = 0; i < np; ++i)
                for (std::size_t j = 0; j < ne; ++j)
                    if (!sweeps[b].sweep_result.at(i, j).try_get(
                            name, tensor[(b * np + i) * ne + j]))
                        ++undefined_cells;
        SensitivityResult r;
        r.samples = tensor.size();
        if (undefined_cells > 0) {
            r.defined = false;
            r.note = "metric undefined in " + std::to_string(undefined_cells) + " of " +
                     std::to_string(tensor.size()) + " cells";
        } else {
            try {
                const AnovaResult a = first_order_anova(tensor, dims);
                r.s_base = a.first_order[0];
                r.s_pv = a.first_order[1];
                r.s_ev = a.first_order[2];
                r.residual = 1.0 - *r.s_base - r.s_pv - r.s_ev;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ZeroVariance) throw;
                r.defined = false;
                r.note = "metric is constant over the grid";
            }
        }
        out.emplace(name, std::move(r));
    }
    return out;
}

PerConsumerIndices per_consumer_indices(const std::vector<const TimeSeriesProfile*>& consumers,
                                        const PvProfile& pv_norm, const EvModelParams& params,
                                        const std::vector<double>& pv_levels,
                                        const std::vector<double>& ev_levels, std::uint64_t seed,
                                        const MetricOptions& options, int threads) {
    const std::vector<ConsumerSweep> sweeps =
        sweep_pool(consumers, pv_norm, params, pv_levels, ev_levels, seed, options, threads);

    PerConsumerIndices out;
    out.per_consumer.reserve(sweeps.size());
    for (const ConsumerSweep& cs : sweeps)
        out.per_consumer.push_back(sensitivity_from_sweep(cs.sweep_result));

    for (const std::string& name : metric_names()) {
        SensitivityResult mean;
        std::size_t defined = 0;
        for (const auto& per : out.per_consumer) {
            const SensitivityResult& r = per.at(name);
            if (!r.defined) continue;
            mean.s_pv += r.s_pv;
            mean.s_ev += r.s_ev;
            mean.residual += r.residual;
            ++defined;
        }
        if (defined == 0) {
            mean.defined = false;
            mean.note = "metric undefined for every consumer";
        } else {
            const double n = static_cast<double>(defined);
            mean.s_pv /= n;
            mean.s_ev /= n;
            mean.residual /= n;
            mean.samples = defined;
        }
        out.group_mean.emplace(name, std::move(mean));
    }
    return out;
}

} // namespace nluq
