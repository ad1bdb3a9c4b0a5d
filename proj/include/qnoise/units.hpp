// units.hpp - user-facing GHz (ordinary frequency) <-> internal rad/ps
#pragma once

#include <numbers>

namespace qnoise::units {

// w = 2 pi nu * 1e-3: 1 GHz = 1e-3 cycles per ps
constexpr double ghz_to_rad_per_ps(double ghz) { return 2.0 * std::numbers::pi * ghz * 1e-3; }
constexpr double rad_per_ps_to_ghz(double w) { return w / (2.0 * std::numbers::pi) * 1e3; }

} // namespace qnoise::units
