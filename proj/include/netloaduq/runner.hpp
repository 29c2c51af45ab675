#pragma once

#include <iosfwd>
#include <string>

#include "netloaduq/config.hpp"

namespace nluq {

/// Executes one pipeline command ("metrics", "sweep", "sensitivity",
/// "interaction", "resample") and writes its JSON/CSV outputs under
/// config.out_dir. Outputs are deterministic for a fixed config and seed;
/// log lines go to `log`, never into the data files.
void run_command(const std::string& command, const RunConfig& config, std::ostream& log);

void run_metrics(const RunConfig& config, std::ostream& log);
void run_sweep(const RunConfig& config, std::ostream& log);
void run_sensitivity(const RunConfig& config, std::ostream& log);
void run_interaction(const RunConfig& config, std::ostream& log);
void run_resample(const RunConfig& config, std::ostream& log);

/// JSON text of a metric report (schema netload-uq/metric-report/v1);
/// round-trips losslessly.
std::string metric_report_json(const MetricReport& report, const std::string& config_hash);

} // namespace nluq
