#pragma once

#include <random>
#include <vector>

#include "netloaduq/profile.hpp"

namespace testutil {

inline nluq::CivilTime midnight(int year = 2022, int month = 1, int day = 1) {
    return nluq::CivilTime{year, month, day, 0, 0, 0};
}

inline nluq::TimeSeriesProfile profile(std::vector<double> values, double dt_hours = 0.25,
                                       nluq::CivilTime start = midnight()) {
    return nluq::make_profile(std::move(values), dt_hours, start);
}

inline std::vector<double> random_values(std::mt19937_64& gen, std::size_t n, double lo,
                                         double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = dist(gen);
    return out;
}

/// Values on a dyadic grid (multiples of 1/16) so arithmetic in tests stays
/// exact.
inline std::vector<double> dyadic_values(std::mt19937_64& gen, std::size_t n, int lo16, int hi16) {
    std::uniform_int_distribution<int> dist(lo16, hi16);
    std::vector<double> out(n);
    for (double& v : out) v = static_cast<double>(dist(gen)) / 16.0;
    return out;
}

} // namespace testutil
