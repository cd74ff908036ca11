#pragma once

#include <vector>

#include "ringgyro/propagator.hpp"

namespace ringgyro {

/// Independent trapping potentials for the spin +1 and spin -1 components.
struct SpinorPotential {
  PotentialSpec plus;
  PotentialSpec minus;
};

using SpinorTrajectory = std::vector<Snapshot<SpinorState>>;

/// Evolves both components under the same rotation term and the same
/// intra-component nonlinearity U|psi_j|^2, each with its own potential.
/// There is no inter-component coupling.
SpinorTrajectory evolve_spinor(const SpinorState& state,
                               const SpinorPotential& pot,
                               const EvolveParams& params);

/// Raman beamsplitter transferring 2 ell units of angular momentum:
///   psi_{+-1} -> (psi_{+-1} - i psi_{-+1} e^{+-2i ell theta}) / sqrt(2)
SpinorState raman_pulse(const SpinorState& state, int ell);

/// Inverse of raman_pulse: psi_{+-1} -> (psi_{+-1} + i psi_{-+1} e^{+-2i ell theta}) / sqrt(2)
SpinorState raman_pulse_inverse(const SpinorState& state, int ell);

/// psi_{+-1} -> (psi_{+-1} - i psi_{-+1}) / sqrt(2)
SpinorState microwave_pulse(const SpinorState& state);

/// J_z(theta) = (|psi_{+1}|^2 - |psi_{-1}|^2) / 2.
std::vector<double> jz_density(const SpinorState& state);

}  // namespace ringgyro
