#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netloaduq/interaction.hpp"
#include "netloaduq/report.hpp"
#include "netloaduq/scenario.hpp"

namespace nluq {

/// Fully resolved run configuration. Parsed from a JSON document; unknown
/// keys are rejected and every default is documented in the README. Any key
/// can be overridden through the environment (prefix NLUQ_, path segments
/// joined by double underscores, e.g. NLUQ_SEEDS__MASTER=7).
struct RunConfig {
    // inputs
    std::filesystem::path base_path;
    std::optional<std::filesystem::path> pv_norm_path;
    std::vector<std::filesystem::path> base_pool; // for sensitivity/interaction; defaults to {base}

    // model
    EvModelParams ev_model = EvModelParams::residential();

    // penetration grids (kWp / kW)
    std::vector<double> pv_levels{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<double> ev_levels{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<double> interaction_levels; // empty -> nonzero pv_levels

    MetricOptions metrics;
    std::string percentile_method = "linear_interpolation"; // the only supported tag

    std::vector<int> resolutions_min{15, 30, 60};

    std::uint64_t master_seed = 42;
    std::size_t interaction_iterations = 100;
    std::vector<std::string> interaction_metrics; // empty -> default set

    std::filesystem::path out_dir = "out";
    int threads = 1;

    /// FNV-1a 64 over the canonical JSON form; recorded in every output.
    std::string config_hash;
};

/// Parses and validates a config JSON document (text form). Throws
/// ConfigError naming the offending key.
RunConfig parse_config_text(const std::string& json_text);

/// Loads a config file and applies NLUQ_* environment overrides.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON for a parsed config (defaults filled in); input to the hash.
std::string canonical_config_json(const RunConfig& config);

} // namespace nluq
