#include "netload_uq.h"

#include <cstring>
#include <iostream>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "netloaduq/basefree.hpp"
#include "netloaduq/csv.hpp"
#include "netloaduq/relative.hpp"
#include "netloaduq/report.hpp"
#include "netloaduq/runner.hpp"

struct nluq_profile {
    nluq::TimeSeriesProfile data;
};

namespace {

using json = nlohmann::json;

thread_local std::string g_last_error;

nluq_status status_for(nluq::ErrorCode code) {
    using nluq::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidParams:
        case ErrorCode::TooShort:
        case ErrorCode::TooFewLevels:
            return NLUQ_ERR_INVALID_ARGUMENT;
        case ErrorCode::ParseError:
        case ErrorCode::NonUniformSpacing:
        case ErrorCode::NonFiniteValue:
            return NLUQ_ERR_PARSE;
        case ErrorCode::IoError:
            return NLUQ_ERR_IO;
        case ErrorCode::EmptyInput:
        case ErrorCode::EmptyPartition:
            return NLUQ_ERR_EMPTY_INPUT;
        case ErrorCode::NonIntegerStepsPerDay:
        case ErrorCode::IncompatibleResolution:
            return NLUQ_ERR_RESOLUTION;
        case ErrorCode::MismatchedPartitions:
        case ErrorCode::LengthMismatch:
        case ErrorCode::AlignmentError:
            return NLUQ_ERR_MISMATCH;
        case ErrorCode::UndefinedKld:
        case ErrorCode::AllDaysDegenerate:
            return NLUQ_ERR_UNDEFINED_METRIC;
        case ErrorCode::ZeroVariance:
        case ErrorCode::NearZeroDenominator:
            return NLUQ_ERR_DEGENERATE;
        case ErrorCode::ConfigError:
            return NLUQ_ERR_CONFIG;
    }
    return NLUQ_ERR_INTERNAL;
}

nluq_status set_error(nluq_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
nluq_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return NLUQ_OK;
    } catch (const nluq::Error& e) {
        return set_error(status_for(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(NLUQ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(NLUQ_ERR_INTERNAL, e.what());
    }
}

nluq::MetricOptions parse_options(const char* options_json) {
    nluq::MetricOptions opts;
    if (!options_json || !*options_json) return opts;
    const json doc = json::parse(options_json, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        nluq::fail(nluq::ErrorCode::ConfigError, "options must be a JSON object");
    for (const auto& item : doc.items()) {
        if (item.key() == "bins") {
            const json& b = item.value();
            if (!b.is_object()) nluq::fail(nluq::ErrorCode::ConfigError, "`bins` must be an object");
            for (const auto& bi : b.items()) {
                if (bi.key() == "shared") {
                    if (!bi.value().is_number_integer() || bi.value().get<int>() < 1)
                        nluq::fail(nluq::ErrorCode::ConfigError, "`bins.shared` must be >= 1");
                    opts.bins.shared_bins = bi.value().get<int>();
                } else if (bi.key() == "per_day") {
                    if (!bi.value().is_number_integer() || bi.value().get<int>() < 0)
                        nluq::fail(nluq::ErrorCode::ConfigError, "`bins.per_day` must be >= 0");
                    opts.bins.day_bins_override = bi.value().get<int>();
                } else {
                    nluq::fail(nluq::ErrorCode::ConfigError, "unknown key `bins." + bi.key() + "`");
                }
            }
        } else if (item.key() == "kld") {
            const json& k = item.value();
            if (!k.is_object()) nluq::fail(nluq::ErrorCode::ConfigError, "`kld` must be an object");
            for (const auto& ki : k.items()) {
                if (ki.key() == "smoothing") {
                    if (!ki.value().is_boolean())
                        nluq::fail(nluq::ErrorCode::ConfigError, "`kld.smoothing` must be a boolean");
                    opts.kld.smoothing = ki.value().get<bool>();
                } else if (ki.key() == "epsilon") {
                    if (!ki.value().is_number() || !(ki.value().get<double>() > 0.0))
                        nluq::fail(nluq::ErrorCode::ConfigError, "`kld.epsilon` must be > 0");
                    opts.kld.epsilon = ki.value().get<double>();
                } else {
                    nluq::fail(nluq::ErrorCode::ConfigError, "unknown key `kld." + ki.key() + "`");
                }
            }
        } else {
            nluq::fail(nluq::ErrorCode::ConfigError, "unknown key `" + item.key() + "`");
        }
    }
    return opts;
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) nluq::fail(nluq::ErrorCode::InvalidArgument, what);
}

} // namespace

extern "C" {

const char* nluq_version(void) { return "0.1.0"; }

const char* nluq_last_error(void) { return g_last_error.c_str(); }

nluq_status nluq_profile_create(const double* values_kw, size_t count, double dt_hours,
                                const char* start_iso8601, nluq_profile** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        require(values_kw != nullptr || count == 0, "values_kw must not be NULL");
        nluq::CivilTime start{2022, 1, 1, 0, 0, 0};
        if (start_iso8601) start = nluq::parse_iso8601(start_iso8601);
        auto profile = std::make_unique<nluq_profile>();
        profile->data =
            nluq::make_profile(std::vector<double>(values_kw, values_kw + count), dt_hours, start);
        *out = profile.release();
    });
}

nluq_status nluq_profile_load_csv(const char* path, nluq_profile** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        require(path != nullptr, "path must not be NULL");
        auto profile = std::make_unique<nluq_profile>();
        profile->data = nluq::load_profile_csv(path);
        *out = profile.release();
    });
}

void nluq_profile_free(nluq_profile* profile) { delete profile; }

size_t nluq_profile_count(const nluq_profile* profile) {
    return profile ? profile->data.size() : 0;
}

double nluq_profile_dt_hours(const nluq_profile* profile) {
    return profile ? profile->data.dt_hours : 0.0;
}

nluq_status nluq_profile_values(const nluq_profile* profile, double* out, size_t capacity) {
    return guarded([&] {
        require(profile != nullptr, "profile must not be NULL");
        require(out != nullptr, "out must not be NULL");
        require(capacity >= profile->data.size(), "capacity too small");
        std::memcpy(out, profile->data.values.data(), profile->data.size() * sizeof(double));
    });
}

nluq_status nluq_profile_resample(const nluq_profile* profile, double new_dt_hours,
                                  nluq_profile** out) {
    return guarded([&] {
        require(profile != nullptr, "profile must not be NULL");
        require(out != nullptr, "out must not be NULL");
        auto resampled = std::make_unique<nluq_profile>();
        resampled->data = nluq::resample(profile->data, new_dt_hours);
        *out = resampled.release();
    });
}

nluq_status nluq_basefree_metrics_json(const nluq_profile* profile, const char* options_json,
                                       char** out_json) {
    return guarded([&] {
        require(profile != nullptr, "profile must not be NULL");
        require(out_json != nullptr, "out_json must not be NULL");
        const nluq::MetricOptions opts = parse_options(options_json);
        const nluq::DailyPartition part = nluq::partition_daily(profile->data);
        const nluq::TimeSeriesProfile retained = nluq::retained_profile(profile->data, part);
        const nluq::BasefreeReport r = nluq::basefree_report(retained, part, opts.bins);

        json j;
        j["schema"] = "netload-uq/basefree/v1";
        j["days"] = part.day_count;
        json metrics;
        metrics["c_annual_kwh"] = r.c_annual_kwh;
        metrics["sigma_kw"] = r.sigma_kw;
        if (r.moments_defined) {
            metrics["skew"] = r.skew;
            metrics["kurt_excess"] = r.kurt_excess;
        }
        metrics["ramp_kw"] = r.ramp_kw;
        metrics["ramp_rate_kw_per_min"] = r.ramp_rate_kw_per_min;
        metrics["entropy_bits"] = r.entropy_bits;
        metrics["c_min_kw"] = r.c_min_kw;
        metrics["c_max_kw"] = r.c_max_kw;
        metrics["q5_kw"] = r.q5_kw;
        metrics["q95_kw"] = r.q95_kw;
        metrics["lql_kw"] = r.lql_kw;
        metrics["uql_kw"] = r.uql_kw;
        j["metrics"] = std::move(metrics);
        j["diagnostics"] = {{"degenerate_days", r.degenerate_days},
                            {"moments_defined", r.moments_defined}};
        *out_json = copy_string(j.dump(2) + "\n");
    });
}

nluq_status nluq_relative_metrics_json(const nluq_profile* base, const nluq_profile* net,
                                       const char* options_json, char** out_json) {
    return guarded([&] {
        require(base != nullptr, "base must not be NULL");
        require(net != nullptr, "net must not be NULL");
        require(out_json != nullptr, "out_json must not be NULL");
        const nluq::MetricOptions opts = parse_options(options_json);
        const nluq::DailyPartition base_part = nluq::partition_daily(base->data);
        const nluq::DailyPartition net_part = nluq::partition_daily(net->data);
        const nluq::TimeSeriesProfile base_ret = nluq::retained_profile(base->data, base_part);
        const nluq::TimeSeriesProfile net_ret = nluq::retained_profile(net->data, net_part);
        const nluq::MetricReport report = nluq::evaluate_pair(
            base_ret, base_part, net_ret, net_part, nluq::ScenarioSpec{}, opts);
        *out_json = copy_string(nluq::metric_report_json(report, ""));
    });
}

void nluq_string_free(char* text) { delete[] text; }

nluq_status nluq_run(const char* command, const char* config_path,
                     const nluq_run_options* options) {
    return guarded([&] {
        require(command != nullptr, "command must not be NULL");
        require(config_path != nullptr, "config_path must not be NULL");
        nluq::RunConfig config = nluq::load_config(config_path);
        if (options) {
            if (options->out_dir) config.out_dir = options->out_dir;
            if (options->seed) config.master_seed = *options->seed;
            if (options->threads > 0) config.threads = options->threads;
        }
        nluq::run_command(command, config, std::cerr);
    });
}

} // extern "C"
