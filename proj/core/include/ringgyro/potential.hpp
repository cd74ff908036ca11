#pragma once

#include <variant>
#include <vector>

#include "ringgyro/ring_grid.hpp"

namespace ringgyro {

/// Trap minimum pinned at `theta0`.
struct FixedCenter {
  double theta0 = 0.0;
};

/// theta0(t) = rate * t.
struct ConstantVelocity {
  double rate = 0.0;
};

/// theta0(t) = direction * (2 pi t / period - sin(2 pi t / period)).
/// Velocity vanishes at t = 0 and t = period, where theta0 = direction * 2pi.
struct SinusoidalProfile {
  double period = 1.0;
  double direction = 1.0;
};

using TrapPath = std::variant<FixedCenter, ConstantVelocity, SinusoidalProfile>;

double trap_center(const TrapPath& path, double t);

/// Time-dependent external potential on the ring:
///
///   V(theta, t) = 1/2 omega^2 R^2 wrap(theta - theta0(t))^2
///               + [t >= on_time] A / (sqrt(2 pi) w) exp(-wrap(theta - c)^2 / 2w^2)
///
/// The barrier is a Gaussian regularization of A * delta(theta - c); A is its
/// integrated strength.
class PotentialSpec {
 public:
  double harmonic_omega = 0.0;
  TrapPath trap_path = FixedCenter{};
  double barrier_amplitude = 0.0;
  double barrier_width = 0.0;
  double barrier_center = 0.0;
  double barrier_on_time = 0.0;

  static PotentialSpec free() { return {}; }
  static PotentialSpec harmonic(double omega, TrapPath path = FixedCenter{});

  bool has_barrier() const noexcept { return barrier_amplitude != 0.0; }
  /// True when V does not depend on time.
  bool is_static() const noexcept;
  /// True when V vanishes identically at time t.
  bool vanishes_at(double t) const noexcept;

  /// Throws ConfigError when the barrier is not resolvable on `grid`
  /// (width < 4 dtheta) or any parameter is non-finite.
  void validate(const RingGrid& grid) const;

  double value(double theta, double t, double radius) const noexcept;
  std::vector<double> sample(const RingGrid& grid, double t) const;
  void sample_into(const RingGrid& grid, double t, std::vector<double>& out) const;
  /// Largest |V| over the grid at time t.
  double max_abs(const RingGrid& grid, double t) const;
};

}  // namespace ringgyro
