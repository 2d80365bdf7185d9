#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace oracles {

template <typename F>
double sphere_average(F&& f, int azimuth_points) {
  boost::math::quadrature::gauss<double, 10> legendre;
  const auto ring = [&](double c) {
    const double theta = std::acos(std::clamp(c, -1.0, 1.0));
    double sum = 0.0;
    for (int a = 0; a < azimuth_points; ++a) sum += f(theta, 2.0 * std::numbers::pi * a / azimuth_points);
    return sum / azimuth_points;
  };
  return 0.5 * legendre.integrate(ring, -1.0, 1.0);
}

}  // namespace oracles
