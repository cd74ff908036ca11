#pragma once

#include <cstddef>

#include "ringgyro/ring_grid.hpp"

namespace ringgyro {

struct BarrierProbe {
  /// Gaussian barrier width (rad).
  double width = 0.0;
  /// Width of the probe packet (rad).
  double sigma = 0.5;
  double dt = 1e-4;
};

/// Fraction of a probe packet (mean winding k_kick R, launched at -pi/2 toward
/// a static barrier at theta = 0) found in [-pi, 0) after time pi R / k_kick.
double barrier_reflection(const GridPtr& grid, double k_kick, double amplitude,
                          const BarrierProbe& probe);

struct BarrierCalibration {
  double amplitude;
  double reflection;
  std::size_t evaluations;
};

/// Bisects on the barrier amplitude until the probe reflection is within
/// 2e-3 of `target_reflection`. Throws ConfigError on a target outside (0, 1)
/// and ConvergenceError when no bracket or no converged amplitude is found.
BarrierCalibration calibrate_barrier(double k_kick, const GridPtr& grid,
                                     const BarrierProbe& probe,
                                     double target_reflection = 0.5);

}  // namespace ringgyro
