#include "ringgyro/schemes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ringgyro/barrier.hpp"
#include "ringgyro/errors.hpp"
#include "ringgyro/ground_state.hpp"
#include "ringgyro/initial_states.hpp"

namespace ringgyro {
namespace {

// dt <= requested with every save time, and each n T_c for a whole-T_c
// horizon, on the step lattice.
EvolveParams make_params(const SchemeConfig& c, double tc) {
  const double t_final = c.resolved_t_final();
  std::size_t intervals = c.save_intervals;
  if (tc > 0.0) {
    const double loops = t_final / tc;
    const double whole = std::round(loops);
    if (whole >= 1.0 && std::abs(loops - whole) < 1e-9) {
      const auto m = static_cast<std::size_t>(whole);
      intervals = ((intervals + m - 1) / m) * m;
    }
  }
  const double interval = t_final / static_cast<double>(intervals);
  const auto steps_per_interval =
      static_cast<std::size_t>(std::ceil(interval / c.dt - 1e-9));
  EvolveParams p;
  p.interaction_U = c.interaction_U;
  p.dt = interval / static_cast<double>(steps_per_interval);
  const std::size_t total = intervals * steps_per_interval;
  p.t_final = static_cast<double>(total) * p.dt;
  p.save_times.resize(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    p.save_times[k] = static_cast<double>(k * steps_per_interval) * p.dt;
  }
  return p;
}

}  // namespace

SchemePlan build_scheme(const SchemeConfig& config) {
  config.validate();
  SchemePlan plan;
  plan.config = config;
  plan.grid = make_grid(config.n_points, config.resolved_radius());
  plan.characteristic_time = config.characteristic_time();
  plan.params = make_params(config, plan.characteristic_time);
  plan.spinor = is_spinor_scheme(config.id);
  const double tc = plan.characteristic_time;

  switch (config.id) {
    case SchemeId::kandes_free:
    case SchemeId::kandes_interacting:
      plan.initial = InitialKind::kandes_split;
      plan.want_analytic = config.interaction_U == 0.0;
      break;
    case SchemeId::helm_barrier:
      plan.initial = InitialKind::kandes_split;
      plan.potential.barrier_width = config.resolved_barrier_width();
      plan.potential.barrier_center = config.barrier_center;
      plan.potential.barrier_on_time = config.resolved_barrier_on_time();
      if (config.barrier_amplitude) {
        plan.potential.barrier_amplitude = *config.barrier_amplitude;
      } else {
        plan.calibrate_barrier = true;
      }
      plan.want_left_right = true;
      plan.want_analytic = config.interaction_U == 0.0;
      break;
    case SchemeId::halkyard_oam:
      plan.initial = InitialKind::oam_pair;
      plan.want_analytic = config.interaction_U == 0.0;
      break;
    case SchemeId::halkyard_two_spin:
      plan.initial = InitialKind::oam_spinor;
      plan.pulse = PulseKind::raman;
      plan.want_spin_population = true;
      plan.want_analytic = config.interaction_U == 0.0;
      break;
    case SchemeId::stevenson_const_velocity:
    case SchemeId::stevenson_sinusoidal: {
      plan.initial = InitialKind::trap_ground_pair;
      plan.pulse = PulseKind::microwave;
      plan.want_spin_population = true;
      const double w = config.trap_omega;
      // Spin +1 travels toward negative theta, spin -1 toward positive.
      if (config.id == SchemeId::stevenson_const_velocity) {
        const double rate = 2.0 * std::numbers::pi / tc;
        plan.spinor_potential.plus = PotentialSpec::harmonic(w, ConstantVelocity{-rate});
        plan.spinor_potential.minus = PotentialSpec::harmonic(w, ConstantVelocity{rate});
      } else {
        plan.spinor_potential.plus = PotentialSpec::harmonic(w, SinusoidalProfile{tc, -1.0});
        plan.spinor_potential.minus = PotentialSpec::harmonic(w, SinusoidalProfile{tc, 1.0});
      }
      break;
    }
  }

  if (plan.initial == InitialKind::oam_pair || plan.initial == InitialKind::oam_spinor) {
    if (static_cast<std::size_t>(std::abs(config.ell)) > config.n_points / 4) {
      throw ConfigError("initial.ell exceeds n_points/4");
    }
  }
  if (plan.spinor) {
    plan.spinor_potential.plus.validate(*plan.grid);
    plan.spinor_potential.minus.validate(*plan.grid);
  } else if (!plan.calibrate_barrier) {
    plan.potential.validate(*plan.grid);
  }
  return plan;
}

namespace {

double norm_drift(const std::vector<Snapshot<Wavefunction>>& traj) {
  double m = 0.0;
  for (const auto& s : traj) m = std::max(m, std::abs(s.state.norm() - 1.0));
  return m;
}

double norm_drift(const std::vector<Snapshot<SpinorState>>& traj) {
  double m = 0.0;
  for (const auto& s : traj) m = std::max(m, std::abs(s.state.joint_norm() - 1.0));
  return m;
}

SpinorState apply_pulse(const SpinorState& s, PulseKind pulse, int ell) {
  switch (pulse) {
    case PulseKind::raman:
      return raman_pulse(s, ell);
    case PulseKind::microwave:
      return microwave_pulse(s);
    case PulseKind::none:
      break;
  }
  return s;
}

void finish_diagnostics(SchemeResult& r) {
  if (!r.derivative_converged) {
    std::ostringstream msg;
    double worst = 0.0;
    for (double x : r.richardson_residual) worst = std::max(worst, x);
    msg << "Richardson residual " << worst << " exceeds " << kRichardsonBound;
    r.diagnostics.push_back(msg.str());
  }
  if (r.max_norm_drift >= 1e-8) {
    std::ostringstream msg;
    msg << "norm drift " << r.max_norm_drift << " exceeds 1e-8";
    r.diagnostics.push_back(msg.str());
  }
  for (auto& v : r.series.invariant_violations()) r.diagnostics.push_back(std::move(v));
}

SchemeResult run_single(const SchemePlan& plan, double omega0, double delta,
                        unsigned threads) {
  const auto& c = plan.config;
  SchemeResult result;
  result.id = c.id;
  result.theta = plan.grid->theta();

  PotentialSpec potential = plan.potential;
  if (plan.calibrate_barrier) {
    BarrierProbe probe{potential.barrier_width, c.sigma, plan.params.dt};
    const auto cal = calibrate_barrier(c.resolved_k_kick(), plan.grid, probe,
                                       c.target_reflection);
    potential.barrier_amplitude = cal.amplitude;
    potential.validate(*plan.grid);
    result.barrier_amplitude = cal.amplitude;
    result.barrier_reflection = cal.reflection;
  } else if (potential.has_barrier()) {
    result.barrier_amplitude = potential.barrier_amplitude;
  }

  const Wavefunction psi0 =
      plan.initial == InitialKind::oam_pair
          ? initial_state_oam_pair(plan.grid, c.ell)
          : initial_state_kandes(plan.grid, c.sigma, c.resolved_k_kick());

  const EvolveParams base_params = plan.params;
  OmegaRunner<Wavefunction> runner = [&psi0, &potential, base_params](double omega) {
    EvolveParams p = base_params;
    p.omega_rot = omega;
    return evolve(psi0, potential, p);
  };
  const auto bundle = derivative_bundle(runner, omega0, delta, threads);

  result.delta_used = bundle.delta_used;
  result.richardson_residual = bundle.richardson_residual;
  result.derivative_converged = bundle.converged;
  result.max_norm_drift = norm_drift(bundle.base);

  auto& series = result.series;
  series.f_s_reference = sagnac_reference(plan.grid->radius());
  if (plan.want_left_right) series.f_lr.emplace();
  if (plan.want_analytic) series.analytic_f_q.emplace();

  for (std::size_t i = 0; i < bundle.base.size(); ++i) {
    const double t = bundle.base[i].time;
    const auto& psi = bundle.base[i].state;
    const auto& dpsi = bundle.derivative[i].state;
    const auto P = density(psi);
    const auto dP = density_derivative(psi, dpsi);

    series.times.push_back(t);
    series.f_q.push_back(qfi(psi, dpsi));
    series.f_c.push_back(cfi_density(P, dP, *plan.grid).value);
    if (series.f_lr) series.f_lr->push_back(cfi_left_right(P, dP, *plan.grid).value);
    if (series.analytic_f_q) series.analytic_f_q->push_back(analytic_qfi_free(psi0, t));

    result.density.times.push_back(t);
    result.density.rows.push_back(P);
    result.ddensity.times.push_back(t);
    result.ddensity.rows.push_back(dP);
  }
  return result;
}

SchemeResult run_spinor(const SchemePlan& plan, double omega0, double delta,
                        unsigned threads) {
  const auto& c = plan.config;
  SchemeResult result;
  result.id = c.id;
  result.theta = plan.grid->theta();

  std::optional<SpinorState> initial;
  if (plan.initial == InitialKind::oam_spinor) {
    initial = initial_state_oam_spinor(plan.grid, c.ell);
  } else {
    PotentialSpec trap0 = plan.spinor_potential.plus;
    trap0.trap_path = FixedCenter{trap_center(trap0.trap_path, 0.0)};
    // Each component carries half the atoms, so U|psi_j|^2 = (U/2)|g|^2 for
    // the unit-norm shape g.
    const auto gs = ground_state(trap0, 0.5 * c.interaction_U, plan.grid);
    result.ground_state_energy = gs.energy;
    Wavefunction half = gs.state;
    for (auto& a : half.amps()) a /= std::sqrt(2.0);
    initial = SpinorState(half, half);
  }

  const SpinorState state0 = *initial;
  const SpinorPotential pot = plan.spinor_potential;
  const EvolveParams base_params = plan.params;
  OmegaRunner<SpinorState> runner = [&state0, &pot, base_params](double omega) {
    EvolveParams p = base_params;
    p.omega_rot = omega;
    return evolve_spinor(state0, pot, p);
  };
  const auto bundle = derivative_bundle(runner, omega0, delta, threads);

  result.delta_used = bundle.delta_used;
  result.richardson_residual = bundle.richardson_residual;
  result.derivative_converged = bundle.converged;
  result.max_norm_drift = norm_drift(bundle.base);

  auto& series = result.series;
  series.f_s_reference = sagnac_reference(plan.grid->radius());
  if (plan.want_spin_population) series.f_spin.emplace();
  if (plan.want_analytic) series.analytic_f_q.emplace();
  result.jz.emplace();
  result.djz.emplace();

  for (std::size_t i = 0; i < bundle.base.size(); ++i) {
    const double t = bundle.base[i].time;
    const auto& pre = bundle.base[i].state;
    const auto& dpre = bundle.derivative[i].state;
    const SpinorState post = apply_pulse(pre, plan.pulse, c.ell);
    const SpinorState dpost = apply_pulse(dpre, plan.pulse, c.ell);

    series.times.push_back(t);
    series.f_q.push_back(spinor_qfi(post, dpost));
    series.f_c.push_back(spinor_cfi_density(post, dpost).value);
    if (series.f_spin) series.f_spin->push_back(spinor_population_cfi(post, dpost).value);
    if (series.analytic_f_q) series.analytic_f_q->push_back(analytic_qfi_free(state0, t));

    result.density.times.push_back(t);
    result.density.rows.push_back(density(pre.plus));
    result.ddensity.times.push_back(t);
    result.ddensity.rows.push_back(density_derivative(pre.plus, dpre.plus));

    const auto dp_plus = density_derivative(post.plus, dpost.plus);
    const auto dp_minus = density_derivative(post.minus, dpost.minus);
    std::vector<double> djz(dp_plus.size());
    for (std::size_t j = 0; j < djz.size(); ++j) djz[j] = 0.5 * (dp_plus[j] - dp_minus[j]);
    result.jz->times.push_back(t);
    result.jz->rows.push_back(jz_density(post));
    result.djz->times.push_back(t);
    result.djz->rows.push_back(std::move(djz));
  }
  return result;
}

}  // namespace

SchemeResult run_scheme(const SchemePlan& plan, const RunOptions& options) {
  const double omega0 = options.omega0.value_or(plan.config.omega0);
  const double delta = options.delta.value_or(plan.config.resolved_delta());
  const unsigned threads = options.threads.value_or(plan.config.threads);
  const std::string name(to_string(plan.config.id));
  try {
    SchemeResult r = plan.spinor ? run_spinor(plan, omega0, delta, threads)
                                 : run_single(plan, omega0, delta, threads);
    finish_diagnostics(r);
    return r;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(name + ": " + e.what(), e.residual());
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  } catch (const GridMismatchError& e) {
    throw GridMismatchError(name + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

}  // namespace ringgyro
