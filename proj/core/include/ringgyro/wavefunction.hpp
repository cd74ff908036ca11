#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ringgyro/ring_grid.hpp"
#include "ringgyro/spectral.hpp"

namespace ringgyro {

class PotentialSpec;

/// One component of the order parameter sampled on a RingGrid.
///
/// The type does not force unit norm: derivative fields d(psi)/d(Omega) share
/// the representation. All state constructors and propagators produce
/// unit-norm states.
class Wavefunction {
 public:
  Wavefunction(GridPtr grid, std::vector<cplx> amps);
  /// All-zero amplitudes on `grid`.
  explicit Wavefunction(GridPtr grid);

  const RingGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return amps_.size(); }

  std::span<const cplx> amps() const noexcept { return amps_; }
  std::span<cplx> amps() noexcept { return amps_; }
  const cplx& operator[](std::size_t j) const noexcept { return amps_[j]; }
  cplx& operator[](std::size_t j) noexcept { return amps_[j]; }

  /// Sum |psi_j|^2 * dtheta.
  double norm() const noexcept;
  /// Rescales to unit norm. Throws std::domain_error on a zero state.
  void normalize();

 private:
  GridPtr grid_;
  std::vector<cplx> amps_;
};

/// Two-component state (spin +1, spin -1) on one grid.
struct SpinorState {
  Wavefunction plus;
  Wavefunction minus;

  SpinorState(Wavefunction p, Wavefunction m);

  const RingGrid& grid() const noexcept { return plus.grid(); }
  double joint_norm() const noexcept { return plus.norm() + minus.norm(); }
};

/// Throws GridMismatchError unless both grids agree.
void require_same_grid(const RingGrid& a, const RingGrid& b);

/// Spectral coefficients c_n = (1/sqrt(2pi)) int psi e^{-in theta} dtheta in
/// centered order (index i carries winding grid.windings()[i]).
/// Sum |c_n|^2 equals the position-space norm.
std::vector<cplx> to_spectrum(const Wavefunction& psi);
/// Inverse of to_spectrum.
Wavefunction to_position(GridPtr grid, std::span<const cplx> coeffs);

struct LzMoments {
  double mean;
  double variance;
};

/// Mean and variance of L_z/hbar from the winding distribution.
LzMoments lz_moments(const Wavefunction& psi);
/// Joint moments over both components of a spinor.
LzMoments lz_moments(const SpinorState& state);

std::vector<double> density(const Wavefunction& psi);
/// <a|b> = int a* b dtheta.
cplx overlap(const Wavefunction& a, const Wavefunction& b);

/// Kinetic + potential + (U/2) int |psi|^4 - Omega <L_z>, with the potential
/// evaluated at time `t`.
double energy(const Wavefunction& psi, const PotentialSpec& potential,
              double interaction_U, double t, double omega_rot = 0.0);

}  // namespace ringgyro
