#include "ringgyro/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringgyro/errors.hpp"
#include "ringgyro/initial_states.hpp"
#include "ringgyro/propagator.hpp"

namespace ringgyro {
namespace {

Wavefunction initial_guess(const PotentialSpec& pot, const GridPtr& grid) {
  if (pot.harmonic_omega != 0.0) {
    // Oscillator length 1/sqrt(omega) in arc length, converted to radians.
    const double width =
        1.0 / (std::sqrt(std::abs(pot.harmonic_omega)) * grid->radius());
    return gaussian_packet(grid, trap_center(pot.trap_path, 0.0),
                           std::min(width, 1.0), 0.0);
  }
  return plane_wave(grid, 0);
}

void fix_global_phase(Wavefunction& psi) {
  cplx sum = 0.0;
  for (const auto& a : psi.amps()) sum += a;
  const double mag = std::abs(sum);
  if (mag == 0.0) return;
  const cplx rot = std::conj(sum) / mag;
  for (auto& a : psi.amps()) a *= rot;
}

}  // namespace

GroundStateResult ground_state(const PotentialSpec& pot, double interaction_U,
                               const GridPtr& grid,
                               const GroundStateOptions& options) {
  if (!pot.is_static()) {
    throw ConfigError("ground_state requires a static potential");
  }
  if (!(options.tol > 0.0)) throw ConfigError("ground_state tol must be positive");

  const double r = grid->radius();
  const double scale = std::max({std::abs(pot.harmonic_omega), 1.0 / (r * r),
                                 std::abs(interaction_U)});
  const double dt = options.dt_imag > 0.0 ? options.dt_imag : 1e-3 / scale;

  SplitStepPropagator prop(grid, pot, 0.0, interaction_U, dt);
  Wavefunction psi = initial_guess(pot, grid);
  double e_prev = energy(psi, pot, interaction_U, 0.0);
  double change = 0.0;
  for (std::size_t k = 1; k <= options.max_steps; ++k) {
    prop.relax_step(psi);
    const double e = energy(psi, pot, interaction_U, 0.0);
    change = std::abs(e - e_prev);
    e_prev = e;
    if (change < options.tol) {
      fix_global_phase(psi);
      return {std::move(psi), e, k};
    }
  }
  throw ConvergenceError("ground_state did not converge in " +
                             std::to_string(options.max_steps) +
                             " steps; last energy change " +
                             std::to_string(change),
                         change);
}

}  // namespace ringgyro
