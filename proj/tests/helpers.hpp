#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "hybesov/data.hpp"
#include "hybesov/field.hpp"

namespace testing {

using namespace hybesov;

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double field_err(const GridField& a, const GridField& b) {
    return lp_norm(a - b, infinity) / std::max(lp_norm(b, infinity), 1e-300);
}

// Random field on the whole dealiased band.
inline GridField random_field(const Grid& g, std::uint64_t seed, double amplitude = 1.0) {
    return random_band_limited(g, 0.0, g.wavenumber(g.dealias_kmax()), seed, amplitude);
}

}  // namespace testing
