#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringgyro/propagator.hpp"
#include "ringgyro/wavefunction.hpp"

namespace ringgyro {

// ---------------------------------------------------------------------------
// Derivatives with respect to the rotation rate
// ---------------------------------------------------------------------------

/// Central difference (a - b) * scale, component-wise.
Wavefunction scaled_difference(const Wavefunction& a, const Wavefunction& b,
                               double scale);
SpinorState scaled_difference(const SpinorState& a, const SpinorState& b,
                              double scale);

double max_abs(const Wavefunction& a);
double max_abs(const SpinorState& a);
double max_abs_difference(const Wavefunction& a, const Wavefunction& b);
double max_abs_difference(const SpinorState& a, const SpinorState& b);

/// Runs a deterministic simulation at rotation rate Omega and returns the
/// snapshots on a fixed time lattice.
template <class State>
using OmegaRunner = std::function<std::vector<Snapshot<State>>(double omega)>;

template <class State>
struct DerivativeBundle {
  std::vector<Snapshot<State>> base;
  /// d(state)/d(Omega) at each base time, central difference with step delta_used.
  std::vector<Snapshot<State>> derivative;
  double delta_used = 0.0;
  /// max|D(delta) - D(delta/2)| / max|D(delta/2)| per save time.
  std::vector<double> richardson_residual;
  bool converged = true;

  double max_residual() const {
    double m = 0.0;
    for (double r : richardson_residual) m = std::max(m, r);
    return m;
  }
};

inline constexpr double kRichardsonBound = 1e-2;

/// Five runs at Omega0, Omega0 +- delta, Omega0 +- delta/2, at most `threads`
/// at a time. The runner must be safe to call concurrently.
template <class State>
DerivativeBundle<State> derivative_bundle(const OmegaRunner<State>& run,
                                          double omega0, double delta,
                                          unsigned threads = 5) {
  if (!(delta > 0.0)) throw std::invalid_argument("derivative delta must be positive");
  const std::vector<double> omegas = {omega0, omega0 + delta, omega0 - delta,
                                      omega0 + 0.5 * delta, omega0 - 0.5 * delta};
  std::vector<std::vector<Snapshot<State>>> runs(omegas.size());
  const std::size_t batch = std::max(1u, threads);
  for (std::size_t first = 0; first < omegas.size(); first += batch) {
    const std::size_t last = std::min(omegas.size(), first + batch);
    std::vector<std::future<std::vector<Snapshot<State>>>> jobs;
    for (std::size_t i = first; i < last; ++i) {
      jobs.push_back(std::async(std::launch::async, run, omegas[i]));
    }
    for (std::size_t i = first; i < last; ++i) runs[i] = jobs[i - first].get();
  }

  const std::size_t n_times = runs[0].size();
  for (const auto& r : runs) {
    if (r.size() != n_times) {
      throw std::logic_error("derivative_bundle: runs returned different time lattices");
    }
  }

  DerivativeBundle<State> bundle;
  bundle.base = std::move(runs[0]);
  bundle.delta_used = delta;
  bundle.derivative.reserve(n_times);
  bundle.richardson_residual.reserve(n_times);
  for (std::size_t i = 0; i < n_times; ++i) {
    auto coarse = scaled_difference(runs[1][i].state, runs[2][i].state, 0.5 / delta);
    auto fine = scaled_difference(runs[3][i].state, runs[4][i].state, 1.0 / delta);
    const double num = max_abs_difference(coarse, fine);
    const double den = max_abs(fine);
    const double residual = num == 0.0 ? 0.0 : num / std::max(den, 1e-300);
    bundle.richardson_residual.push_back(residual);
    if (!(residual < kRichardsonBound)) bundle.converged = false;
    bundle.derivative.push_back({bundle.base[i].time, std::move(coarse)});
  }
  return bundle;
}

// ---------------------------------------------------------------------------
// Estimators (per particle)
// ---------------------------------------------------------------------------

/// 4 [ <dpsi|dpsi> - |<psi|dpsi>|^2 ], clamped at zero.
double qfi(const Wavefunction& psi, const Wavefunction& dpsi);
/// Two-component version; inner products sum over both spin states.
double spinor_qfi(const SpinorState& state, const SpinorState& dstate);

/// 4 t^2 Var(L_z / hbar) of psi0; exact for U = 0, V = 0.
double analytic_qfi_free(const Wavefunction& psi0, double t);
double analytic_qfi_free(const SpinorState& state0, double t);

/// dP/dOmega = 2 Re(psi* dpsi).
std::vector<double> density_derivative(const Wavefunction& psi,
                                       const Wavefunction& dpsi);

inline constexpr double kEmptyBinFraction = 1e-10;

struct CfiResult {
  double value = 0.0;
  /// Probability carried by bins excluded as empty (P <= 1e-10 max P).
  double excluded_mass = 0.0;
};

/// Sum_j dP_j^2 / P_j dtheta over bins with P_j > 1e-10 max(P). A single
/// empty bin between two occupied ones (a fringe node) takes the mean of its
/// neighbours' integrands. Throws std::invalid_argument unless int P = 1 and int dP = 0 (to 1e-6).
CfiResult cfi_density(std::span<const double> P, std::span<const double> dP,
                      const RingGrid& grid);

/// Two-outcome CFI for bins [-pi, split) and [split, pi).
CfiResult cfi_left_right(std::span<const double> P, std::span<const double> dP,
                         const RingGrid& grid, double split_angle = 0.0);

/// Two-outcome CFI of the spin populations.
CfiResult cfi_spin_population(double p_plus, double p_minus, double dp_plus,
                              double dp_minus);

/// Spin- and position-resolved CFI: sum over both component densities.
CfiResult spinor_cfi_density(const SpinorState& state, const SpinorState& dstate);

/// Spin-population CFI computed from a state and its derivative.
CfiResult spinor_population_cfi(const SpinorState& state, const SpinorState& dstate);

/// F_S = (2 pi R^2)^2 with hbar = m = 1.
double sagnac_reference(double radius);
/// phi_S = 2 Omega A with hbar = m = 1.
double sagnac_phase(double omega, double area);

// ---------------------------------------------------------------------------
// Time series
// ---------------------------------------------------------------------------

struct FisherSeries {
  std::vector<double> times;
  std::vector<double> f_q;
  std::vector<double> f_c;
  std::optional<std::vector<double>> f_lr;
  std::optional<std::vector<double>> f_spin;
  std::optional<std::vector<double>> analytic_f_q;
  double f_s_reference = 0.0;

  /// Human-readable violations of F_C <= F_Q, F_LR <= F_C, F_spin <= F_C
  /// (relative slack 1e-3). Empty when all hold.
  std::vector<std::string> invariant_violations() const;
};

inline constexpr double kOrderingSlack = 1e-3;

/// a <= b (1 + 1e-3), with an absolute floor for values at round-off level.
bool ordered_within_slack(double a, double b);

}  // namespace ringgyro
