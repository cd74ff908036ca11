#pragma once

#include "ringgyro/wavefunction.hpp"

namespace ringgyro {

/// Counter-propagating split packet: exp(-theta^2 / 2 sigma^2) cos(k_kick R theta),
/// renormalized on the grid. Throws ConfigError if the Gaussian at theta = +-pi
/// exceeds 1e-8 of its peak.
Wavefunction initial_state_kandes(const GridPtr& grid, double sigma, double k_kick);

/// Gaussian packet centered at `center` with mean winding `mean_winding`.
Wavefunction gaussian_packet(const GridPtr& grid, double center, double sigma,
                             double mean_winding);

/// (e^{i ell theta} + e^{-i ell theta}) / sqrt(4 pi). Requires |ell| <= N/4.
Wavefunction initial_state_oam_pair(const GridPtr& grid, int ell);

/// e^{i ell theta} scaled so its norm is `weight`.
Wavefunction plane_wave(const GridPtr& grid, int ell, double weight = 1.0);

/// psi_{+-1} = e^{+-i ell theta} / (2 sqrt(pi)).
SpinorState initial_state_oam_spinor(const GridPtr& grid, int ell);

}  // namespace ringgyro
