#include "netloaduq/rng.hpp"

#include <cmath>
#include <numbers>

#include "netloaduq/error.hpp"

namespace nluq {

double Rng::normal() {
    double u1;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::discrete(std::span<const double> weights) {
    if (weights.empty()) fail(ErrorCode::InvalidArgument, "discrete draw from empty weights");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) fail(ErrorCode::InvalidArgument, "negative weight in discrete draw");
        total += w;
    }
    if (total <= 0.0) fail(ErrorCode::InvalidArgument, "discrete weights sum to zero");
    double u = next_double() * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        u -= weights[i];
        if (u < 0.0) return i;
    }
    return weights.size() - 1;
}

std::size_t Rng::index(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "index draw from empty range");
    std::size_t i = static_cast<std::size_t>(next_double() * static_cast<double>(n));
    return i < n ? i : n - 1;
}

} // namespace nluq
