#include "netloaduq/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

extern char** environ;

namespace nluq {

namespace {

using json = nlohmann::json;

[[noreturn]] void cfg_fail(const std::string& msg) { fail(ErrorCode::ConfigError, msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            cfg_fail("unknown key `" + where + item.key() + "`");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) cfg_fail("`" + where + "` must be a number");
    return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) cfg_fail("`" + where + "` must be an integer");
    return v.get<std::int64_t>();
}

bool as_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) cfg_fail("`" + where + "` must be a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) cfg_fail("`" + where + "` must be a string");
    return v.get<std::string>();
}

std::vector<double> as_number_array(const json& v, const std::string& where) {
    if (!v.is_array()) cfg_fail("`" + where + "` must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(as_number(e, where));
    return out;
}

void parse_ev_model(const json& obj, EvModelParams& ev) {
    check_keys(obj, "ev_model.",
               {"preset", "start_time", "session_energy_mean_kwh", "session_energy_sigma_log",
                "max_session_hours", "battery_capacity_kwh", "session_counts",
                "session_count_probs"});
    if (const json* v = find(obj, "preset")) {
        const std::string preset = as_string(*v, "ev_model.preset");
        if (preset == "residential")
            ev = EvModelParams::residential();
        else if (preset == "office")
            ev = EvModelParams::office();
        else
            cfg_fail("`ev_model.preset` must be `residential` or `office`");
    }
    if (const json* v = find(obj, "start_time")) {
        if (!v->is_object()) cfg_fail("`ev_model.start_time` must be an object");
        check_keys(*v, "ev_model.start_time.", {"weights", "means_h", "stds_h"});
        if (const json* w = find(*v, "weights"))
            ev.start_time.weights = as_number_array(*w, "ev_model.start_time.weights");
        if (const json* w = find(*v, "means_h"))
            ev.start_time.means_h = as_number_array(*w, "ev_model.start_time.means_h");
        if (const json* w = find(*v, "stds_h"))
            ev.start_time.stds_h = as_number_array(*w, "ev_model.start_time.stds_h");
    }
    if (const json* v = find(obj, "session_energy_mean_kwh"))
        ev.session_energy_mean_kwh = as_number(*v, "ev_model.session_energy_mean_kwh");
    if (const json* v = find(obj, "session_energy_sigma_log"))
        ev.session_energy_sigma_log = as_number(*v, "ev_model.session_energy_sigma_log");
    if (const json* v = find(obj, "max_session_hours"))
        ev.max_session_hours = as_number(*v, "ev_model.max_session_hours");
    if (const json* v = find(obj, "battery_capacity_kwh"))
        ev.battery_capacity_kwh = as_number(*v, "ev_model.battery_capacity_kwh");
    if (const json* v = find(obj, "session_counts")) {
        if (!v->is_array()) cfg_fail("`ev_model.session_counts` must be an array of integers");
        ev.session_counts.clear();
        for (const auto& e : *v)
            ev.session_counts.push_back(
                static_cast<int>(as_integer(e, "ev_model.session_counts")));
    }
    if (const json* v = find(obj, "session_count_probs"))
        ev.session_count_probs = as_number_array(*v, "ev_model.session_count_probs");
    try {
        ev.validate();
    } catch (const Error& e) {
        cfg_fail(std::string("ev_model: ") + e.what());
    }
}

RunConfig from_json_doc(const json& doc) {
    if (!doc.is_object()) cfg_fail("config root must be a JSON object");
    check_keys(doc, "",
               {"inputs", "ev_model", "levels", "metrics", "resolutions_min", "seeds",
                "interaction", "output", "threads"});

    RunConfig cfg;

    const json* inputs = find(doc, "inputs");
    if (!inputs || !inputs->is_object()) cfg_fail("`inputs` object is required");
    check_keys(*inputs, "inputs.", {"base", "pv_norm", "base_pool"});
    const json* base = find(*inputs, "base");
    if (!base) cfg_fail("`inputs.base` is required");
    cfg.base_path = as_string(*base, "inputs.base");
    if (const json* v = find(*inputs, "pv_norm"))
        cfg.pv_norm_path = std::filesystem::path(as_string(*v, "inputs.pv_norm"));
    if (const json* v = find(*inputs, "base_pool")) {
        if (!v->is_array()) cfg_fail("`inputs.base_pool` must be an array of paths");
        for (const auto& e : *v) cfg.base_pool.emplace_back(as_string(e, "inputs.base_pool"));
        if (cfg.base_pool.empty()) cfg_fail("`inputs.base_pool` must not be empty");
    }
    if (cfg.base_pool.empty()) cfg.base_pool = {cfg.base_path};

    if (const json* v = find(doc, "ev_model")) {
        if (!v->is_object()) cfg_fail("`ev_model` must be an object");
        parse_ev_model(*v, cfg.ev_model);
    }

    if (const json* v = find(doc, "levels")) {
        if (!v->is_object()) cfg_fail("`levels` must be an object");
        check_keys(*v, "levels.", {"pv_kwp", "ev_kw", "interaction"});
        if (const json* w = find(*v, "pv_kwp")) cfg.pv_levels = as_number_array(*w, "levels.pv_kwp");
        if (const json* w = find(*v, "ev_kw")) cfg.ev_levels = as_number_array(*w, "levels.ev_kw");
        if (const json* w = find(*v, "interaction"))
            cfg.interaction_levels = as_number_array(*w, "levels.interaction");
    }
    for (const auto& [name, levels] :
         {std::pair<const char*, const std::vector<double>*>{"levels.pv_kwp", &cfg.pv_levels},
          {"levels.ev_kw", &cfg.ev_levels},
          {"levels.interaction", &cfg.interaction_levels}}) {
        for (double x : *levels)
            if (!(x >= 0.0)) cfg_fail(std::string("`") + name + "` entries must be >= 0");
    }
    if (cfg.pv_levels.empty() || cfg.ev_levels.empty())
        cfg_fail("`levels.pv_kwp` and `levels.ev_kw` must not be empty");

    if (const json* v = find(doc, "metrics")) {
        if (!v->is_object()) cfg_fail("`metrics` must be an object");
        check_keys(*v, "metrics.",
                   {"shared_bins", "day_bins", "kld_smoothing", "kld_epsilon",
                    "percentile_method"});
        if (const json* w = find(*v, "shared_bins")) {
            const std::int64_t b = as_integer(*w, "metrics.shared_bins");
            if (b < 1) cfg_fail("`metrics.shared_bins` must be >= 1");
            cfg.metrics.bins.shared_bins = static_cast<int>(b);
        }
        if (const json* w = find(*v, "day_bins")) {
            const std::int64_t b = as_integer(*w, "metrics.day_bins");
            if (b < 0) cfg_fail("`metrics.day_bins` must be >= 0 (0 = automatic)");
            cfg.metrics.bins.day_bins_override = static_cast<int>(b);
        }
        if (const json* w = find(*v, "kld_smoothing"))
            cfg.metrics.kld.smoothing = as_bool(*w, "metrics.kld_smoothing");
        if (const json* w = find(*v, "kld_epsilon")) {
            cfg.metrics.kld.epsilon = as_number(*w, "metrics.kld_epsilon");
            if (!(cfg.metrics.kld.epsilon > 0.0)) cfg_fail("`metrics.kld_epsilon` must be > 0");
        }
        if (const json* w = find(*v, "percentile_method"))
            cfg.percentile_method = as_string(*w, "metrics.percentile_method");
    }
    if (cfg.percentile_method != "linear_interpolation")
        cfg_fail("`metrics.percentile_method`: only `linear_interpolation` is supported");

    if (const json* v = find(doc, "resolutions_min")) {
        if (!v->is_array()) cfg_fail("`resolutions_min` must be an array of integers");
        cfg.resolutions_min.clear();
        for (const auto& e : *v) {
            const std::int64_t m = as_integer(e, "resolutions_min");
            if (m < 1) cfg_fail("`resolutions_min` entries must be >= 1");
            cfg.resolutions_min.push_back(static_cast<int>(m));
        }
        if (cfg.resolutions_min.empty()) cfg_fail("`resolutions_min` must not be empty");
    }

    if (const json* v = find(doc, "seeds")) {
        if (!v->is_object()) cfg_fail("`seeds` must be an object");
        check_keys(*v, "seeds.", {"master"});
        if (const json* w = find(*v, "master")) {
            const std::int64_t s = as_integer(*w, "seeds.master");
            if (s < 0) cfg_fail("`seeds.master` must be >= 0");
            cfg.master_seed = static_cast<std::uint64_t>(s);
        }
    }

    if (const json* v = find(doc, "interaction")) {
        if (!v->is_object()) cfg_fail("`interaction` must be an object");
        check_keys(*v, "interaction.", {"iterations", "metrics"});
        if (const json* w = find(*v, "iterations")) {
            const std::int64_t n = as_integer(*w, "interaction.iterations");
            if (n < 1) cfg_fail("`interaction.iterations` must be >= 1");
            cfg.interaction_iterations = static_cast<std::size_t>(n);
        }
        if (const json* w = find(*v, "metrics")) {
            if (!w->is_array()) cfg_fail("`interaction.metrics` must be an array of names");
            for (const auto& e : *w)
                cfg.interaction_metrics.push_back(as_string(e, "interaction.metrics"));
        }
    }

    if (const json* v = find(doc, "output")) {
        if (!v->is_object()) cfg_fail("`output` must be an object");
        check_keys(*v, "output.", {"dir"});
        if (const json* w = find(*v, "dir")) cfg.out_dir = as_string(*w, "output.dir");
    }

    if (const json* v = find(doc, "threads")) {
        const std::int64_t t = as_integer(*v, "threads");
        if (t < 1) cfg_fail("`threads` must be >= 1");
        cfg.threads = static_cast<int>(t);
    }

    return cfg;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex16(std::uint64_t v) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

/// Sets `value` (raw text; parsed as JSON when possible, else as a string) at
/// the dotted path given by the env var name after the NLUQ_ prefix.
void apply_env_override(json& doc, const std::string& name, const std::string& value) {
    std::vector<std::string> segments;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        const std::size_t sep = name.find("__", pos);
        std::string seg =
            name.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
        std::transform(seg.begin(), seg.end(), seg.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (seg.empty()) cfg_fail("malformed override variable NLUQ_" + name);
        segments.push_back(std::move(seg));
        if (sep == std::string::npos) break;
        pos = sep + 2;
    }

    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;

    json* node = &doc;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        if (!node->is_object()) cfg_fail("override NLUQ_" + name + " descends into a non-object");
        node = &(*node)[segments[i]];
        if (node->is_null()) *node = json::object();
    }
    if (!node->is_object()) cfg_fail("override NLUQ_" + name + " descends into a non-object");
    (*node)[segments.back()] = std::move(parsed);
}

void apply_env_overrides(json& doc) {
    for (char** env = environ; env && *env; ++env) {
        const std::string_view entry(*env);
        if (entry.rfind("NLUQ_", 0) != 0) continue;
        const std::size_t eq = entry.find('=');
        if (eq == std::string_view::npos) continue;
        const std::string name(entry.substr(5, eq - 5));
        const std::string value(entry.substr(eq + 1));
        apply_env_override(doc, name, value);
    }
}

json parse_json_text(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) cfg_fail("config is not valid JSON");
    return doc;
}

} // namespace

RunConfig parse_config_text(const std::string& json_text) {
    const json doc = parse_json_text(json_text);
    RunConfig cfg = from_json_doc(doc);
    cfg.config_hash = to_hex16(fnv1a64(canonical_config_json(cfg)));
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();

    json doc = parse_json_text(buf.str());
    apply_env_overrides(doc);
    RunConfig cfg = from_json_doc(doc);
    cfg.config_hash = to_hex16(fnv1a64(canonical_config_json(cfg)));
    return cfg;
}

std::string canonical_config_json(const RunConfig& config) {
    json doc;
    doc["inputs"]["base"] = config.base_path.string();
    if (config.pv_norm_path) doc["inputs"]["pv_norm"] = config.pv_norm_path->string();
    json pool = json::array();
    for (const auto& p : config.base_pool) pool.push_back(p.string());
    doc["inputs"]["base_pool"] = std::move(pool);

    const EvModelParams& ev = config.ev_model;
    doc["ev_model"]["start_time"]["weights"] = ev.start_time.weights;
    doc["ev_model"]["start_time"]["means_h"] = ev.start_time.means_h;
    doc["ev_model"]["start_time"]["stds_h"] = ev.start_time.stds_h;
    doc["ev_model"]["session_energy_mean_kwh"] = ev.session_energy_mean_kwh;
    doc["ev_model"]["session_energy_sigma_log"] = ev.session_energy_sigma_log;
    doc["ev_model"]["max_session_hours"] = ev.max_session_hours;
    doc["ev_model"]["battery_capacity_kwh"] = ev.battery_capacity_kwh;
    doc["ev_model"]["session_counts"] = ev.session_counts;
    doc["ev_model"]["session_count_probs"] = ev.session_count_probs;

    doc["levels"]["pv_kwp"] = config.pv_levels;
    doc["levels"]["ev_kw"] = config.ev_levels;
    doc["levels"]["interaction"] = config.interaction_levels;

    doc["metrics"]["shared_bins"] = config.metrics.bins.shared_bins;
    doc["metrics"]["day_bins"] = config.metrics.bins.day_bins_override;
    doc["metrics"]["kld_smoothing"] = config.metrics.kld.smoothing;
    doc["metrics"]["kld_epsilon"] = config.metrics.kld.epsilon;
    doc["metrics"]["percentile_method"] = config.percentile_method;

    doc["resolutions_min"] = config.resolutions_min;
    doc["seeds"]["master"] = config.master_seed;
    doc["interaction"]["iterations"] = config.interaction_iterations;
    doc["interaction"]["metrics"] = config.interaction_metrics;
    doc["output"]["dir"] = config.out_dir.string();
    doc["threads"] = config.threads;
    return doc.dump();
}

} // namespace nluq
