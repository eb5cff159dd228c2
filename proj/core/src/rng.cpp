#include "fairband/rng.hpp"

#include <cmath>
#include <numbers>

namespace fairband {

double Rng::normal() {
    // Box-Muller; u clamped away from 0 so log stays finite
    double u = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace fairband
