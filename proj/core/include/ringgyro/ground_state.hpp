#pragma once

#include <cstddef>

#include "ringgyro/potential.hpp"
#include "ringgyro/wavefunction.hpp"

namespace ringgyro {

struct GroundStateOptions {
  /// Stop once |E_k - E_{k-1}| < tol.
  double tol = 1e-10;
  /// Imaginary time step; <= 0 selects 1e-3 / max(omega, 1/R^2, |U|).
  double dt_imag = 0.0;
  std::size_t max_steps = 2'000'000;
};

struct GroundStateResult {
  Wavefunction state;
  double energy;
  std::size_t steps;
};

/// Imaginary-time relaxation of a static potential with renormalization after
/// every step. The returned state has unit norm and sum_j psi_j real and >= 0.
/// Throws ConfigError for time-dependent potentials and ConvergenceError when
/// max_steps is exhausted.
GroundStateResult ground_state(const PotentialSpec& pot, double interaction_U,
                               const GridPtr& grid,
                               const GroundStateOptions& options = {});

}  // namespace ringgyro
