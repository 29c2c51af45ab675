#include "netloaduq/report.hpp"

#include <algorithm>

namespace nluq {

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "c_annual_kwh", "sigma_kw",  "skew",   "kurt_excess",
        "ramp_kw",      "entropy_bits", "c_min_kw", "c_max_kw",
        "q5_kw",        "q95_kw",    "lql_kw", "uql_kw",
        "kld_bits",     "tvd",       "wasserstein_kw", "mae_kw",
        "rmse_kw",
    };
    return names;
}

std::vector<std::pair<std::string, double>> MetricReport::flat() const {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(metric_names().size());
    for (const std::string& name : metric_names()) {
        double v = 0.0;
        if (try_get(name, v)) out.emplace_back(name, v);
    }
    return out;
}

bool MetricReport::try_get(const std::string& name, double& out) const {
    if (name == "c_annual_kwh") { out = basefree.c_annual_kwh; return true; }
    if (name == "sigma_kw") { out = basefree.sigma_kw; return true; }
    if (name == "skew") { out = basefree.skew; return basefree.moments_defined; }
    if (name == "kurt_excess") { out = basefree.kurt_excess; return basefree.moments_defined; }
    if (name == "ramp_kw") { out = basefree.ramp_kw; return true; }
    if (name == "ramp_rate_kw_per_min") { out = basefree.ramp_rate_kw_per_min; return true; }
    if (name == "entropy_bits") { out = basefree.entropy_bits; return true; }
    if (name == "c_min_kw") { out = basefree.c_min_kw; return true; }
    if (name == "c_max_kw") { out = basefree.c_max_kw; return true; }
    if (name == "q5_kw") { out = basefree.q5_kw; return true; }
    if (name == "q95_kw") { out = basefree.q95_kw; return true; }
    if (name == "lql_kw") { out = basefree.lql_kw; return true; }
    if (name == "uql_kw") { out = basefree.uql_kw; return true; }
    if (name == "kld_bits") { out = relative.kld_bits; return relative.kld_defined; }
    if (name == "tvd") { out = relative.tvd; return true; }
    if (name == "wasserstein_kw") { out = relative.wasserstein_kw; return true; }
    if (name == "wasserstein_exact_kw") { out = relative.wasserstein_exact_kw; return true; }
    if (name == "mae_kw") { out = relative.mae_kw; return true; }
    if (name == "rmse_kw") { out = relative.rmse_kw; return true; }
    fail(ErrorCode::InvalidArgument, "unknown metric name: " + name);
}

MetricReport evaluate_pair(const TimeSeriesProfile& base, const DailyPartition& base_part,
                           const TimeSeriesProfile& net, const DailyPartition& net_part,
                           ScenarioSpec spec, const MetricOptions& options) {
    MetricReport r;
    r.scenario = std::move(spec);
    r.basefree = basefree_report(net, net_part, options.bins);
    RelativeOptions rel;
    rel.shared_bins = options.bins.shared_bins;
    rel.kld = options.kld;
    r.relative = relative_report(base, net, base_part, net_part, rel);
    return r;
}

} // namespace nluq
