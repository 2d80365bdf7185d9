#pragma once

#include <cmath>
#include <cstddef>

namespace rtnq {

/// k-th point of an evenly spaced axis, snapped to 12 decimals so that e.g. 0.05 + 199 * 0.05 is exactly 10.
inline double grid_point(double lo, double step, std::size_t k) {
  const double raw = lo + static_cast<double>(k) * step;
  const double snapped = std::round(raw * 1e12) / 1e12;
  return std::abs(snapped - raw) <= 1e-9 * step ? snapped : raw;
}

}  // namespace rtnq
