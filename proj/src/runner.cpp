#include "netloaduq/runner.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "netloaduq/csv.hpp"
#include "netloaduq/interaction.hpp"
#include "netloaduq/rng.hpp"
#include "netloaduq/sensitivity.hpp"

namespace nluq {

namespace {

using json = nlohmann::json;

struct LoadedBase {
    TimeSeriesProfile raw;
    DailyPartition part;
    TimeSeriesProfile retained;
    std::string id;
};

LoadedBase load_base(const std::filesystem::path& path, std::ostream& log) {
    LoadedBase b;
    b.raw = load_profile_csv(path);
    b.part = partition_daily(b.raw);
    b.retained = retained_profile(b.raw, b.part);
    b.id = path.stem().string();
    log << "[netload-uq] " << path.string() << ": " << b.raw.size() << " samples at "
        << b.raw.dt_hours * 60.0 << " min, " << b.part.day_count << " full days ("
        << b.part.leading_skipped << " leading / " << b.part.trailing_dropped
        << " trailing samples dropped)\n";
    return b;
}

/// Normalized PV aligned to the base retained window. Without a PV input the
/// grid must not request nonzero capacity; a zero profile keeps the scenario
/// algebra uniform.
PvProfile load_pv(const RunConfig& config, const TimeSeriesProfile& retained, bool pv_needed,
                  std::ostream& log) {
    PvProfile pv;
    if (config.pv_norm_path) {
        TimeSeriesProfile raw = load_profile_csv(*config.pv_norm_path);
        DailyPartition part = partition_daily(raw);
        pv.profile = retained_profile(raw, part);
        pv.validate();
        pv.validate_alignment(retained);
        log << "[netload-uq] PV profile: " << pv.profile.size() << " samples\n";
        return pv;
    }
    if (pv_needed)
        fail(ErrorCode::ConfigError,
             "`inputs.pv_norm` is required when nonzero PV levels are requested");
    pv.profile = retained;
    std::fill(pv.profile.values.begin(), pv.profile.values.end(), 0.0);
    return pv;
}

bool any_positive(const std::vector<double>& levels) {
    return std::any_of(levels.begin(), levels.end(), [](double x) { return x > 0.0; });
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
    if (!out) fail(ErrorCode::IoError, "write error on " + path.string());
}

std::string format_value(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> columns = [] {
        std::vector<std::string> c = metric_names();
        c.push_back("ramp_rate_kw_per_min");
        c.push_back("wasserstein_exact_kw");
        return c;
    }();
    return columns;
}

const std::vector<std::string>& basefree_columns() {
    static const std::vector<std::string> columns = {
        "c_annual_kwh", "sigma_kw", "skew",     "kurt_excess", "ramp_kw",
        "ramp_rate_kw_per_min",     "entropy_bits", "c_min_kw", "c_max_kw",
        "q5_kw",        "q95_kw",   "lql_kw",   "uql_kw",
    };
    return columns;
}

json report_to_json(const MetricReport& report) {
    json j;
    j["scenario"] = {{"base_id", report.scenario.base_id},
                     {"pv_kwp", report.scenario.pv_kwp},
                     {"ev_kw", report.scenario.ev_kw},
                     {"seed", report.scenario.seed}};
    json metrics = json::object();
    json undefined = json::array();
    for (const std::string& name : report_columns()) {
        double v = 0.0;
        if (report.try_get(name, v))
            metrics[name] = v;
        else
            undefined.push_back(name);
    }
    j["metrics"] = std::move(metrics);
    j["undefined"] = std::move(undefined);
    // Raw values are kW/kWh; the table convention shows annual energy in MWh.
    j["display"] = {{"c_annual_mwh", report.basefree.c_annual_kwh / 1000.0}};
    j["diagnostics"] = {{"degenerate_days", report.basefree.degenerate_days},
                        {"kld",
                         {{"problem_bins", report.relative.kld_diag.problem_bins},
                          {"days_affected", report.relative.kld_diag.days_affected},
                          {"undefined_days", report.relative.kld_diag.undefined_days}}}};
    return j;
}

std::string report_csv_header() {
    std::string line = "base_id,pv_kwp,ev_kw,seed";
    for (const std::string& name : report_columns()) line += "," + name;
    return line + "\n";
}

std::string report_csv_row(const MetricReport& report) {
    std::string line = report.scenario.base_id + "," + format_value(report.scenario.pv_kwp) +
                       "," + format_value(report.scenario.ev_kw) + "," +
                       std::to_string(report.scenario.seed);
    for (const std::string& name : report_columns()) {
        double v = 0.0;
        line += ",";
        if (report.try_get(name, v)) line += format_value(v);
    }
    return line + "\n";
}

json sensitivity_to_json(const SensitivityResult& r) {
    json j;
    j["defined"] = r.defined;
    j["samples"] = r.samples;
    if (r.defined) {
        j["s_pv"] = r.s_pv;
        j["s_ev"] = r.s_ev;
        if (r.s_base) j["s_base"] = *r.s_base;
        j["residual"] = r.residual;
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json stats_to_json(const ReductionStats& st) {
    json j;
    j["draws"] = st.draws;
    j["excluded"] = st.excluded;
    if (st.draws > st.excluded) {
        j["mean"] = st.mean;
        j["stddev"] = st.stddev;
        j["q25"] = st.q25;
        j["median"] = st.median;
        j["q75"] = st.q75;
    }
    if (st.reduction_of_means_defined) j["reduction_of_means"] = st.reduction_of_means;
    return j;
}

std::vector<LoadedBase> load_pool(const RunConfig& config, std::ostream& log) {
    std::vector<LoadedBase> pool;
    pool.reserve(config.base_pool.size());
    for (const auto& path : config.base_pool) pool.push_back(load_base(path, log));
    return pool;
}

} // namespace

std::string metric_report_json(const MetricReport& report, const std::string& config_hash) {
    json j;
    j["schema"] = "netload-uq/metric-report/v1";
    j["config_hash"] = config_hash;
    j["report"] = report_to_json(report);
    return j.dump(2) + "\n";
}

void run_metrics(const RunConfig& config, std::ostream& log) {
    const LoadedBase base = load_base(config.base_path, log);
    const double pv_max = *std::max_element(config.pv_levels.begin(), config.pv_levels.end());
    const double ev_max = *std::max_element(config.ev_levels.begin(), config.ev_levels.end());
    const PvProfile pv_norm = load_pv(config, base.retained, pv_max > 0.0, log);

    // Base alone, PV alone at the top level, EV alone at the top level: the
    // three single-technology scenarios the relative metrics compare.
    std::vector<std::pair<double, double>> scenarios{{0.0, 0.0}};
    if (pv_max > 0.0) scenarios.emplace_back(pv_max, 0.0);
    if (ev_max > 0.0) scenarios.emplace_back(0.0, ev_max);

    const TimeSeriesProfile zero_ev = [&] {
        TimeSeriesProfile z = base.retained;
        std::fill(z.values.begin(), z.values.end(), 0.0);
        return z;
    }();

    std::vector<MetricReport> reports;
    for (const auto& [pv_kwp, ev_kw] : scenarios) {
        const TimeSeriesProfile ev =
            ev_kw > 0.0 ? synthesize_ev_year(config.ev_model, ev_kw, base.part.day_count,
                                             base.part.dt_hours, base.part.first_day_start,
                                             config.master_seed)
                        : zero_ev;
        NetLoadScenario sc = compose_net(base.retained, ev, scale_pv(pv_norm, pv_kwp),
                                         ScenarioSpec{base.id, pv_kwp, ev_kw, config.master_seed});
        const DailyPartition net_part = partition_daily(sc.net);
        reports.push_back(
            evaluate_pair(sc.base, base.part, sc.net, net_part, sc.spec, config.metrics));
        log << "[netload-uq] metrics: pv=" << pv_kwp << " kWp, ev=" << ev_kw << " kW done\n";
    }

    json out;
    out["schema"] = "netload-uq/metrics/v1";
    out["config_hash"] = config.config_hash;
    json arr = json::array();
    for (const MetricReport& r : reports) arr.push_back(report_to_json(r));
    out["reports"] = std::move(arr);
    std::filesystem::create_directories(config.out_dir);
    write_text(config.out_dir / "metrics.json", out.dump(2) + "\n");

    std::string csv = report_csv_header();
    for (const MetricReport& r : reports) csv += report_csv_row(r);
    write_text(config.out_dir / "metrics.csv", csv);
    log << "[netload-uq] wrote " << (config.out_dir / "metrics.json").string() << "\n";
}

void run_sweep(const RunConfig& config, std::ostream& log) {
    const LoadedBase base = load_base(config.base_path, log);
    const PvProfile pv_norm =
        load_pv(config, base.retained, any_positive(config.pv_levels), log);

    SweepResult result = sweep(base.retained, base.part, pv_norm, config.ev_model,
                               config.pv_levels, config.ev_levels, config.master_seed,
                               config.metrics, config.threads);
    for (MetricReport& cell : result.cells) cell.scenario.base_id = base.id;
    log << "[netload-uq] sweep: " << result.cells.size() << " cells\n";

    json out;
    out["schema"] = "netload-uq/sweep/v1";
    out["config_hash"] = config.config_hash;
    out["pv_levels"] = result.pv_levels;
    out["ev_levels"] = result.ev_levels;
    json arr = json::array();
    for (const MetricReport& r : result.cells) arr.push_back(report_to_json(r));
    out["cells"] = std::move(arr);
    std::filesystem::create_directories(config.out_dir);
    write_text(config.out_dir / "sweep.json", out.dump(2) + "\n");

    std::string csv = report_csv_header();
    for (const MetricReport& r : result.cells) csv += report_csv_row(r);
    write_text(config.out_dir / "sweep.csv", csv);

    // Long-form (pv, ev, value) triples, one block per metric, for heatmaps.
    std::string heatmap = "metric,pv_kwp,ev_kw,value\n";
    for (const std::string& name : report_columns()) {
        for (const MetricReport& r : result.cells) {
            double v = 0.0;
            if (!r.try_get(name, v)) continue;
            heatmap += name + "," + format_value(r.scenario.pv_kwp) + "," +
                       format_value(r.scenario.ev_kw) + "," + format_value(v) + "\n";
        }
    }
    write_text(config.out_dir / "sweep_heatmap.csv", heatmap);
    log << "[netload-uq] wrote " << (config.out_dir / "sweep.json").string() << "\n";
}

void run_sensitivity(const RunConfig& config, std::ostream& log) {
    const std::vector<LoadedBase> pool = load_pool(config, log);
    const PvProfile pv_norm =
        load_pv(config, pool.front().retained, any_positive(config.pv_levels), log);

    SweepResult grid =
        sweep(pool.front().retained, pool.front().part, pv_norm, config.ev_model,
              config.pv_levels, config.ev_levels, config.master_seed, config.metrics,
              config.threads);
    const std::map<std::string, SensitivityResult> two_input = sensitivity_from_sweep(grid);
    log << "[netload-uq] sensitivity: two-input grid of " << grid.cells.size() << " cells\n";

    std::map<std::string, SensitivityResult> three_input;
    if (pool.size() >= 2) {
        std::vector<const TimeSeriesProfile*> raw;
        raw.reserve(pool.size());
        for (const LoadedBase& b : pool) raw.push_back(&b.raw);
        three_input = first_order_indices_with_baseload(raw, pv_norm, config.ev_model,
                                                        config.pv_levels, config.ev_levels,
                                                        config.master_seed, config.metrics,
                                                        config.threads);
        log << "[netload-uq] sensitivity: base-load axis over " << pool.size() << " profiles\n";
    }

    json out;
    out["schema"] = "netload-uq/sensitivity/v1";
    out["config_hash"] = config.config_hash;
    out["pv_levels"] = config.pv_levels;
    out["ev_levels"] = config.ev_levels;
    json two = json::object();
    for (const auto& [name, r] : two_input) two[name] = sensitivity_to_json(r);
    out["two_input"] = std::move(two);
    if (!three_input.empty()) {
        json three = json::object();
        for (const auto& [name, r] : three_input) three[name] = sensitivity_to_json(r);
        out["three_input"] = std::move(three);
    }
    std::filesystem::create_directories(config.out_dir);
    write_text(config.out_dir / "sensitivity.json", out.dump(2) + "\n");

    std::string csv = "mode,metric,s_base,s_pv,s_ev,residual,defined,note\n";
    auto append_rows = [&](const char* mode, const std::map<std::string, SensitivityResult>& m) {
        for (const auto& [name, r] : m) {
            csv += std::string(mode) + "," + name + ",";
            if (r.defined) {
                csv += (r.s_base ? format_value(*r.s_base) : std::string());
                csv += "," + format_value(r.s_pv) + "," + format_value(r.s_ev) + "," +
                       format_value(r.residual);
            } else {
                csv += ",,,";
            }
            csv += std::string(",") + (r.defined ? "true" : "false") + "," + r.note + "\n";
        }
    };
    append_rows("two_input", two_input);
    if (!three_input.empty()) append_rows("three_input", three_input);
    write_text(config.out_dir / "sensitivity.csv", csv);
    log << "[netload-uq] wrote " << (config.out_dir / "sensitivity.json").string() << "\n";
}

void run_interaction(const RunConfig& config, std::ostream& log) {
    const std::vector<LoadedBase> pool = load_pool(config, log);

    std::vector<double> levels = config.interaction_levels;
    if (levels.empty()) {
        for (double x : config.pv_levels)
            if (x > 0.0) levels.push_back(x);
    }
    if (levels.empty())
        fail(ErrorCode::ConfigError, "no nonzero interaction levels available");

    const PvProfile pv_norm = load_pv(config, pool.front().retained, true, log);
    const std::vector<std::string>& metrics =
        config.interaction_metrics.empty() ? default_interaction_metrics()
                                           : config.interaction_metrics;

    std::vector<const TimeSeriesProfile*> raw;
    raw.reserve(pool.size());
    for (const LoadedBase& b : pool) raw.push_back(&b.raw);

    // Matched penetration: one PV kWp = one charger kW along the diagonal.
    std::vector<std::map<std::string, ReductionStats>> per_level;
    per_level.reserve(levels.size());
    for (std::size_t li = 0; li < levels.size(); ++li) {
        per_level.push_back(monte_carlo_interaction(
            raw, pv_norm, config.ev_model, levels[li], levels[li], metrics,
            config.interaction_iterations, derive_stream(config.master_seed, 0x1eae1, li),
            config.metrics, config.threads));
        log << "[netload-uq] interaction: level " << levels[li] << " done ("
            << config.interaction_iterations << " draws)\n";
    }

    json out;
    out["schema"] = "netload-uq/interaction/v1";
    out["config_hash"] = config.config_hash;
    out["levels"] = levels;
    out["iterations"] = config.interaction_iterations;
    json per = json::array();
    for (std::size_t li = 0; li < levels.size(); ++li) {
        json entry;
        entry["level"] = levels[li];
        json ms = json::object();
        for (const auto& [name, st] : per_level[li]) ms[name] = stats_to_json(st);
        entry["metrics"] = std::move(ms);
        per.push_back(std::move(entry));
    }
    out["per_level"] = std::move(per);

    json fits = json::object();
    for (const std::string& name : metrics) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (std::size_t li = 0; li < levels.size(); ++li) {
            const ReductionStats& st = per_level[li].at(name);
            if (st.draws > st.excluded) {
                xs.push_back(levels[li]);
                ys.push_back(st.median);
            }
        }
        if (xs.size() >= 2) {
            try {
                const LinearFit fit = median_regression(xs, ys);
                fits[name] = {{"slope", fit.slope}, {"intercept", fit.intercept},
                              {"points", xs.size()}};
            } catch (const Error& e) {
                if (e.code() != ErrorCode::TooFewLevels) throw;
            }
        }
    }
    out["median_regression"] = std::move(fits);

    std::filesystem::create_directories(config.out_dir);
    write_text(config.out_dir / "interaction.json", out.dump(2) + "\n");

    std::string csv =
        "level,metric,draws,excluded,mean,stddev,q25,median,q75,reduction_of_means\n";
    for (std::size_t li = 0; li < levels.size(); ++li) {
        for (const auto& [name, st] : per_level[li]) {
            csv += format_value(levels[li]) + "," + name + "," + std::to_string(st.draws) + "," +
                   std::to_string(st.excluded) + ",";
            if (st.draws > st.excluded) {
                csv += format_value(st.mean) + "," + format_value(st.stddev) + "," +
                       format_value(st.q25) + "," + format_value(st.median) + "," +
                       format_value(st.q75);
            } else {
                csv += ",,,,";
            }
            csv += ",";
            if (st.reduction_of_means_defined) csv += format_value(st.reduction_of_means);
            csv += "\n";
        }
    }
    write_text(config.out_dir / "interaction.csv", csv);
    log << "[netload-uq] wrote " << (config.out_dir / "interaction.json").string() << "\n";
}

void run_resample(const RunConfig& config, std::ostream& log) {
    const LoadedBase base = load_base(config.base_path, log);
    std::filesystem::create_directories(config.out_dir);

    json rows = json::array();
    std::string csv = "resolution_min";
    for (const std::string& name : basefree_columns()) csv += "," + name;
    csv += "\n";

    for (int m : config.resolutions_min) {
        const TimeSeriesProfile res = resample(base.retained, static_cast<double>(m) / 60.0);
        const DailyPartition part = partition_daily(res);
        const TimeSeriesProfile ret = retained_profile(res, part);
        MetricReport report;
        report.scenario = ScenarioSpec{base.id, 0.0, 0.0, config.master_seed};
        report.basefree = basefree_report(ret, part, config.metrics.bins);

        const std::string name = "resampled_" + std::to_string(m) + "min.csv";
        write_profile_csv(config.out_dir / name, res);
        log << "[netload-uq] resample: " << m << " min -> " << res.size() << " samples ("
            << name << ")\n";

        json row;
        row["resolution_min"] = m;
        row["samples"] = res.size();
        json metrics = json::object();
        csv += std::to_string(m);
        for (const std::string& col : basefree_columns()) {
            double v = 0.0;
            csv += ",";
            if (report.try_get(col, v)) {
                metrics[col] = v;
                csv += format_value(v);
            }
        }
        row["metrics"] = std::move(metrics);
        rows.push_back(std::move(row));
        csv += "\n";
    }

    json out;
    out["schema"] = "netload-uq/resample/v1";
    out["config_hash"] = config.config_hash;
    out["rows"] = std::move(rows);
    write_text(config.out_dir / "resample.json", out.dump(2) + "\n");
    write_text(config.out_dir / "resample.csv", csv);
    log << "[netload-uq] wrote " << (config.out_dir / "resample.json").string() << "\n";
}

void run_command(const std::string& command, const RunConfig& config, std::ostream& log) {
    if (command == "metrics")
        run_metrics(config, log);
    else if (command == "sweep")
        run_sweep(config, log);
    else if (command == "sensitivity")
        run_sensitivity(config, log);
    else if (command == "interaction")
        run_interaction(config, log);
    else if (command == "resample")
        run_resample(config, log);
    else
        fail(ErrorCode::InvalidArgument, "unknown command `" + command + "`");
}

} // namespace nluq
