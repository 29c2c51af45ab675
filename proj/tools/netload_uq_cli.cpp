// netload-uq command-line front end. Talks to the shared library through the
// C API only; everything interesting happens behind nluq_run.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "netload_uq.h"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "Run configuration JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", args.out_dir, "Output directory (overrides output.dir)");
    cmd->add_option("--seed", args.seed, "Master seed (overrides seeds.master)")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--threads", args.threads, "Worker threads (overrides threads)")
        ->check(CLI::PositiveNumber);
}

/// One-line machine-readable error on stderr; log lines also go to stderr, so
/// stdout stays clean for scripting.
int run(const char* command, const CommonArgs& args) {
    nluq_run_options options{};
    options.out_dir = args.out_dir.empty() ? nullptr : args.out_dir.c_str();
    options.seed = args.seed_set ? &args.seed : nullptr;
    options.threads = args.threads;

    const nluq_status status = nluq_run(command, args.config_path.c_str(), &options);
    if (status != NLUQ_OK) {
        std::string message = nluq_last_error();
        for (char& c : message)
            if (c == '"' || c == '\n') c = ' ';
        std::fprintf(stderr, "{\"error\":{\"command\":\"%s\",\"status\":%d,\"message\":\"%s\"}}\n",
                     command, static_cast<int>(status), message.c_str());
        return static_cast<int>(status);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Net-load uncertainty quantification under EV and PV penetration"};
    app.set_version_flag("--version", std::string(nluq_version()));
    app.require_subcommand(1);

    static const struct {
        const char* name;
        const char* help;
    } commands[] = {
        {"metrics", "Evaluate the metric suite for the base and single-technology scenarios"},
        {"sweep", "Full PV x EV penetration grid with every metric per cell"},
        {"sensitivity", "First-order variance-based sensitivity indices over the grid"},
        {"interaction", "Monte Carlo EV/PV interaction (reduction percentages) study"},
        {"resample", "Recompute the single-series metrics at coarser resolutions"},
    };

    CommonArgs args[std::size(commands)];
    for (std::size_t i = 0; i < std::size(commands); ++i)
        add_common(app.add_subcommand(commands[i].name, commands[i].help), args[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(commands); ++i)
        if (app.get_subcommand(commands[i].name)->parsed()) return run(commands[i].name, args[i]);
    return 1;
}
