#pragma once

#include <cstddef>
#include <vector>

#include "ringgyro/potential.hpp"
#include "ringgyro/wavefunction.hpp"

namespace ringgyro {

/// Rotation rate, nonlinearity and time grid of one real-time run.
struct EvolveParams {
  double omega_rot = 0.0;
  double interaction_U = 0.0;
  double dt = 1e-4;
  double t_final = 0.0;
  /// Sorted output times; each must be an integer multiple of dt.
  std::vector<double> save_times;

  /// Throws ConfigError on dt <= 0, unsorted or out-of-range save times, or
  /// save times that are not multiples of dt (to 1e-12 dt).
  void validate() const;
  std::size_t total_steps() const;
  /// Step index of every save time.
  std::vector<std::size_t> save_steps() const;
};

/// Uniformly spaced save times k * t_final / intervals, k = 0..intervals.
std::vector<double> uniform_save_times(double t_final, std::size_t intervals);

template <class State>
struct Snapshot {
  double time;
  State state;
};

using Trajectory = std::vector<Snapshot<Wavefunction>>;

/// Second-order Strang splitting for
///   i dpsi/dt = [ -(1/2R^2) d^2/dtheta^2 - Omega L_z + V(theta, t) + U |psi|^2 ] psi
/// with the position-space phase split in two halves around one exact spectral
/// kinetic/rotation step. Owns its FFT plans and scratch; not thread-safe, but
/// independent instances may run concurrently.
class SplitStepPropagator {
 public:
  SplitStepPropagator(GridPtr grid, PotentialSpec potential, double omega_rot,
                      double interaction_U, double dt);

  const RingGrid& grid() const noexcept { return *grid_; }
  double dt() const noexcept { return dt_; }

  /// Advances psi from t to t + dt in place.
  void step(Wavefunction& psi, double t);

  /// One imaginary-time step of length dt followed by renormalization.
  /// Uses the potential at time 0 and ignores the rotation term.
  void relax_step(Wavefunction& psi);

 private:
  void potential_phase(Wavefunction& psi, double t_mid, double half_dt);
  const std::vector<double>& potential_at(double t);
  void spectral_multiply(Wavefunction& psi, const std::vector<cplx>& factor);

  GridPtr grid_;
  PotentialSpec potential_;
  double omega_rot_;
  double interaction_U_;
  double dt_;
  SpectralTransform transform_;
  std::vector<cplx> kinetic_phase_;
  std::vector<cplx> kinetic_decay_;
  std::vector<cplx> scratch_;
  std::vector<double> v_moving_;
  std::vector<double> v_before_;
  std::vector<double> v_after_;
  bool trap_moves_;
};

/// One Strang step from t to t + dt. Requires t + dt <= t_final.
Wavefunction step(const Wavefunction& psi, const PotentialSpec& pot,
                  const EvolveParams& params, double t);

/// Propagates psi0 from t = 0 to params.t_final and returns a snapshot at each
/// save time. Deterministic.
Trajectory evolve(const Wavefunction& psi0, const PotentialSpec& pot,
                  const EvolveParams& params);

/// Exact U = 0, V = 0 evolution: c_n -> c_n exp(-i t [n^2/2R^2 - Omega n]).
Wavefunction evolve_free_exact(const Wavefunction& psi, double omega_rot, double t);

}  // namespace ringgyro
