// Naive reference implementations, written straight off the metric
// definitions with no code shared with the library. Deliberately simple and
// slow; the unit and acceptance tests treat these as ground truth.
#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

inline double percentile(std::vector<double> v, double p) {
    assert(!v.empty());
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * p / 100.0;
    const auto lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline std::vector<std::vector<double>> split_days(const std::vector<double>& values,
                                                   std::size_t steps_per_day) {
    assert(steps_per_day > 0 && values.size() % steps_per_day == 0);
    std::vector<std::vector<double>> days;
    for (std::size_t i = 0; i < values.size(); i += steps_per_day)
        days.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i),
                          values.begin() + static_cast<std::ptrdiff_t>(i + steps_per_day));
    return days;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double pop_std(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

inline double annual_consumption(const std::vector<double>& values, double dt_hours) {
    double s = 0.0;
    for (double x : values) s += x;
    return s * dt_hours;
}

inline double mean_daily_std(const std::vector<double>& values, std::size_t steps_per_day) {
    const auto days = split_days(values, steps_per_day);
    double s = 0.0;
    for (const auto& d : days) s += pop_std(d);
    return s / static_cast<double>(days.size());
}

struct Moments {
    double skew = 0.0;
    double kurt_excess = 0.0;
    long degenerate_days = 0;
    bool defined = false;
};

inline Moments daily_moments(const std::vector<double>& values, std::size_t steps_per_day) {
    Moments out;
    double skew = 0.0;
    double kurt = 0.0;
    long used = 0;
    for (const auto& d : split_days(values, steps_per_day)) {
        const double m = mean(d);
        const double sd = pop_std(d);
        if (sd == 0.0) {
            ++out.degenerate_days;
            continue;
        }
        double s3 = 0.0;
        double s4 = 0.0;
        for (double x : d) {
            const double z = (x - m) / sd;
            s3 += z * z * z;
            s4 += z * z * z * z;
        }
        skew += s3 / static_cast<double>(d.size());
        kurt += s4 / static_cast<double>(d.size()) - 3.0;
        ++used;
    }
    if (used > 0) {
        out.skew = skew / static_cast<double>(used);
        out.kurt_excess = kurt / static_cast<double>(used);
        out.defined = true;
    }
    return out;
}

inline double mean_ramp(const std::vector<double>& values) {
    assert(values.size() >= 2);
    double s = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) s += std::abs(values[i] - values[i - 1]);
    return s / static_cast<double>(values.size() - 1);
}

inline double ramp_rate_per_min(const std::vector<double>& values, double dt_hours) {
    return mean_ramp(values) / (dt_hours * 60.0);
}

/// Uniform histogram over [lo, hi]; probability masses. Zero-range data goes
/// into one bin.
inline std::vector<double> histogram(const std::vector<double>& v, double lo, double hi, int bins) {
    if (!(hi > lo)) return {1.0};
    std::vector<double> probs(static_cast<std::size_t>(bins), 0.0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double x : v) {
        auto idx = static_cast<long>((x - lo) / width);
        if (idx < 0) idx = 0;
        if (idx >= bins) idx = bins - 1;
        probs[static_cast<std::size_t>(idx)] += 1.0;
    }
    for (double& p : probs) p /= static_cast<double>(v.size());
    return probs;
}

inline double entropy_bits(const std::vector<double>& probs) {
    double e = 0.0;
    for (double p : probs)
        if (p > 0.0) e -= p * std::log2(p);
    return e;
}

inline double mean_daily_entropy(const std::vector<double>& values, std::size_t steps_per_day) {
    const int bins =
        std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(steps_per_day)))));
    double s = 0.0;
    const auto days = split_days(values, steps_per_day);
    for (const auto& d : days) {
        const double lo = *std::min_element(d.begin(), d.end());
        const double hi = *std::max_element(d.begin(), d.end());
        s += entropy_bits(histogram(d, lo, hi, bins));
    }
    return s / static_cast<double>(days.size());
}

inline double lower_quartile_length(const std::vector<double>& values,
                                    std::size_t steps_per_day) {
    double s = 0.0;
    const auto days = split_days(values, steps_per_day);
    for (const auto& d : days) s += percentile(d, 25.0) - *std::min_element(d.begin(), d.end());
    return s / static_cast<double>(days.size());
}

inline double upper_quartile_length(const std::vector<double>& values,
                                    std::size_t steps_per_day) {
    double s = 0.0;
    const auto days = split_days(values, steps_per_day);
    for (const auto& d : days) s += *std::max_element(d.begin(), d.end()) - percentile(d, 75.0);
    return s / static_cast<double>(days.size());
}

struct DayPair {
    std::vector<double> p;
    std::vector<double> q;
    double bin_width = 1.0;
};

inline DayPair shared_pair(const std::vector<double>& base_day, const std::vector<double>& net_day,
                           int bins) {
    const double lo = std::min(*std::min_element(base_day.begin(), base_day.end()),
                               *std::min_element(net_day.begin(), net_day.end()));
    const double hi = std::max(*std::max_element(base_day.begin(), base_day.end()),
                               *std::max_element(net_day.begin(), net_day.end()));
    DayPair out;
    out.p = histogram(base_day, lo, hi, bins);
    out.q = histogram(net_day, lo, hi, bins);
    out.bin_width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
    return out;
}

inline std::vector<double> smooth(const std::vector<double>& probs, double eps) {
    std::vector<double> out(probs.size());
    const double denom = 1.0 + static_cast<double>(probs.size()) * eps;
    for (std::size_t i = 0; i < probs.size(); ++i) out[i] = (probs[i] + eps) / denom;
    return out;
}

/// Mean daily KLD base||net. Strict: nullopt when any day has a bin with base
/// mass and no net mass. Smoothed: always defined.
inline std::optional<double> kld(const std::vector<double>& base, const std::vector<double>& net,
                                 std::size_t steps_per_day, int bins, bool smoothing,
                                 double eps = 1e-9) {
    const auto base_days = split_days(base, steps_per_day);
    const auto net_days = split_days(net, steps_per_day);
    double s = 0.0;
    for (std::size_t d = 0; d < base_days.size(); ++d) {
        DayPair pair = shared_pair(base_days[d], net_days[d], bins);
        if (smoothing) {
            pair.p = smooth(pair.p, eps);
            pair.q = smooth(pair.q, eps);
        }
        double day = 0.0;
        for (std::size_t i = 0; i < pair.p.size(); ++i) {
            if (pair.p[i] > 0.0) {
                if (pair.q[i] == 0.0) return std::nullopt;
                day += pair.p[i] * std::log2(pair.p[i] / pair.q[i]);
            }
        }
        s += day;
    }
    return s / static_cast<double>(base_days.size());
}

inline double tvd(const std::vector<double>& base, const std::vector<double>& net,
                  std::size_t steps_per_day, int bins) {
    const auto base_days = split_days(base, steps_per_day);
    const auto net_days = split_days(net, steps_per_day);
    double s = 0.0;
    for (std::size_t d = 0; d < base_days.size(); ++d) {
        const DayPair pair = shared_pair(base_days[d], net_days[d], bins);
        double l1 = 0.0;
        for (std::size_t i = 0; i < pair.p.size(); ++i) l1 += std::abs(pair.p[i] - pair.q[i]);
        s += 0.5 * l1;
    }
    return s / static_cast<double>(base_days.size());
}

inline double wasserstein_grid(const std::vector<double>& base, const std::vector<double>& net,
                               std::size_t steps_per_day, int bins) {
    const auto base_days = split_days(base, steps_per_day);
    const auto net_days = split_days(net, steps_per_day);
    double s = 0.0;
    for (std::size_t d = 0; d < base_days.size(); ++d) {
        const DayPair pair = shared_pair(base_days[d], net_days[d], bins);
        double day = 0.0;
        double cp = 0.0;
        double cq = 0.0;
        for (std::size_t i = 0; i < pair.p.size(); ++i) {
            cp += pair.p[i];
            cq += pair.q[i];
            day += std::abs(cp - cq) * pair.bin_width;
        }
        s += day;
    }
    return s / static_cast<double>(base_days.size());
}

inline double wasserstein_exact(const std::vector<double>& base, const std::vector<double>& net,
                                std::size_t steps_per_day) {
    const auto base_days = split_days(base, steps_per_day);
    const auto net_days = split_days(net, steps_per_day);
    double s = 0.0;
    for (std::size_t d = 0; d < base_days.size(); ++d) {
        std::vector<double> p = base_days[d];
        std::vector<double> q = net_days[d];
        std::sort(p.begin(), p.end());
        std::sort(q.begin(), q.end());
        double day = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) day += std::abs(p[i] - q[i]);
        s += day / static_cast<double>(p.size());
    }
    return s / static_cast<double>(base_days.size());
}

inline double mae(const std::vector<double>& base, const std::vector<double>& net) {
    assert(base.size() == net.size());
    double s = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) s += std::abs(net[i] - base[i]);
    return s / static_cast<double>(base.size());
}

inline double rmse(const std::vector<double>& base, const std::vector<double>& net) {
    assert(base.size() == net.size());
    double s = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i)
        s += (net[i] - base[i]) * (net[i] - base[i]);
    return std::sqrt(s / static_cast<double>(base.size()));
}

} // namespace oracle
