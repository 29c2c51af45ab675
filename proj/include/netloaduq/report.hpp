#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netloaduq/basefree.hpp"
#include "netloaduq/relative.hpp"

namespace nluq {

/// Identifies one net-load realization: which base profile, how much PV and
/// EV, and the RNG seed that fixes the charging behavior.
struct ScenarioSpec {
    std::string base_id;
    double pv_kwp = 0.0;
    double ev_kw = 0.0;
    std::uint64_t seed = 0;
};

struct MetricOptions {
    BinPolicy bins;
    KldOptions kld;
};

/// Every metric for one scenario, plus diagnostics.
struct MetricReport {
    ScenarioSpec scenario;
    BasefreeReport basefree;
    RelativeReport relative;

    /// Flat (name, value) view for tables, sensitivity grids and CSV output.
    /// Metrics that are undefined for this scenario (strict KLD with problem
    /// bins, moments with all days degenerate) are omitted.
    std::vector<std::pair<std::string, double>> flat() const;

    /// Value of one metric by flat name; throws InvalidArgument for unknown
    /// names, UndefinedKld/AllDaysDegenerate style lookups return false.
    bool try_get(const std::string& name, double& out) const;
};

/// Canonical metric names in table order.
const std::vector<std::string>& metric_names();

/// Computes both report halves for a base/net pair whose partitions are
/// already available (net == base gives all-zero relative metrics).
MetricReport evaluate_pair(const TimeSeriesProfile& base, const DailyPartition& base_part,
                           const TimeSeriesProfile& net, const DailyPartition& net_part,
                           ScenarioSpec spec, const MetricOptions& options);

} // namespace nluq
