#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringgyro/fisher.hpp"
#include "ringgyro/potential.hpp"
#include "ringgyro/scheme_config.hpp"
#include "ringgyro/spinor.hpp"

namespace ringgyro {

enum class InitialKind {
  kandes_split,      ///< Gaussian times cos(k R theta)
  oam_pair,          ///< (e^{i l theta} + e^{-i l theta}) / sqrt(4 pi)
  oam_spinor,        ///< psi_{+-1} = e^{+-i l theta} / (2 sqrt(pi))
  trap_ground_pair,  ///< ground state of the t = 0 trap, split equally
};

enum class PulseKind { none, raman, microwave };

/// Executable description of one scheme: nothing here has been simulated.
struct SchemePlan {
  SchemeConfig config;
  GridPtr grid;
  bool spinor = false;
  InitialKind initial = InitialKind::kandes_split;
  /// Single-component potential; for spinor schemes, `spinor_potential`.
  PotentialSpec potential;
  SpinorPotential spinor_potential;
  /// The barrier amplitude is found by calibration at run time.
  bool calibrate_barrier = false;
  /// omega_rot is filled per run.
  EvolveParams params;
  PulseKind pulse = PulseKind::none;
  /// T_c (collision or transport time), 0 if undefined.
  double characteristic_time = 0.0;

  bool want_left_right = false;
  bool want_spin_population = false;
  bool want_analytic = false;
};

/// Throws ConfigError on invalid configurations.
SchemePlan build_scheme(const SchemeConfig& config);

/// Row-per-time map over the angular grid.
struct FieldMap {
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
};

struct SchemeResult {
  SchemeId id;
  FisherSeries series;
  std::vector<double> theta;
  /// |psi|^2 (spin +1 component for spinor schemes, before the pulse).
  FieldMap density;
  FieldMap ddensity;
  /// J_z after the pulse and its Omega derivative; spinor schemes only.
  std::optional<FieldMap> jz;
  std::optional<FieldMap> djz;

  double delta_used = 0.0;
  std::vector<double> richardson_residual;
  bool derivative_converged = true;
  double max_norm_drift = 0.0;
  std::optional<double> barrier_amplitude;
  std::optional<double> barrier_reflection;
  std::optional<double> ground_state_energy;

  /// Non-empty when the run is degraded.
  std::vector<std::string> diagnostics;
  bool degraded() const noexcept { return !diagnostics.empty(); }
};

struct RunOptions {
  std::optional<double> omega0;
  /// Absolute Omega step; defaults to the config's resolved delta.
  std::optional<double> delta;
  std::optional<unsigned> threads;
};

/// Prepares the initial state, runs the five Omega-offset simulations and
/// evaluates every selected estimator at each save time. For spinor schemes
/// the estimators at time t describe the state after the pulse is applied at
/// t. Errors are rethrown with the scheme name attached.
SchemeResult run_scheme(const SchemePlan& plan, const RunOptions& options = {});

}  // namespace ringgyro
