#include "ringgyro/ring_grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "ringgyro/errors.hpp"

namespace ringgyro {

RingGrid::RingGrid(std::size_t n_points, double radius)
    : radius_(radius),
      spacing_(2.0 * std::numbers::pi / static_cast<double>(n_points)),
      theta_(n_points),
      windings_(n_points) {
  const auto half = static_cast<int>(n_points / 2);
  for (std::size_t j = 0; j < n_points; ++j) {
    theta_[j] = -std::numbers::pi + static_cast<double>(j) * spacing_;
    windings_[j] = static_cast<int>(j) - half;
  }
}

GridPtr make_grid(std::size_t n_points, double radius) {
  if (n_points < 8 || !std::has_single_bit(n_points)) {
    throw ConfigError("grid n_points must be a power of two >= 8, got " +
                      std::to_string(n_points));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("grid radius must be positive and finite, got " +
                      std::to_string(radius));
  }
  return GridPtr(new RingGrid(n_points, radius));
}

double wrap_angle(double angle) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, two_pi);
  if (wrapped <= -std::numbers::pi) wrapped += two_pi;
  return wrapped;
}

}  // namespace ringgyro
