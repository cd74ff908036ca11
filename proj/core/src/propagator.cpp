#include "ringgyro/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringgyro/errors.hpp"

namespace ringgyro {
namespace {

// Relative tolerance in the step count.
bool is_step_multiple(double time, double dt) {
  const double k = time / dt;
  return std::abs(k - std::round(k)) <= 1e-12 * std::max(1.0, k);
}

}  // namespace

void EvolveParams::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("dt must be positive, got " + std::to_string(dt));
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ConfigError("t_final must be non-negative");
  }
  if (!is_step_multiple(t_final, dt)) {
    throw ConfigError("t_final is not an integer multiple of dt");
  }
  for (std::size_t i = 0; i < save_times.size(); ++i) {
    const double s = save_times[i];
    if (s < 0.0 || s > t_final * (1.0 + 1e-12)) {
      throw ConfigError("save time " + std::to_string(s) +
                        " outside [0, t_final]");
    }
    if (i > 0 && !(s > save_times[i - 1])) {
      throw ConfigError("save times must be strictly increasing");
    }
    if (!is_step_multiple(s, dt)) {
      throw ConfigError("save time " + std::to_string(s) +
                        " is not a multiple of dt");
    }
  }
}

std::size_t EvolveParams::total_steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

std::vector<std::size_t> EvolveParams::save_steps() const {
  std::vector<std::size_t> steps;
  steps.reserve(save_times.size());
  for (double s : save_times) {
    steps.push_back(static_cast<std::size_t>(std::llround(s / dt)));
  }
  return steps;
}

std::vector<double> uniform_save_times(double t_final, std::size_t intervals) {
  std::vector<double> times(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    times[k] = t_final * static_cast<double>(k) / static_cast<double>(intervals);
  }
  return times;
}

SplitStepPropagator::SplitStepPropagator(GridPtr grid, PotentialSpec potential,
                                         double omega_rot, double interaction_U,
                                         double dt)
    : grid_(std::move(grid)),
      potential_(std::move(potential)),
      omega_rot_(omega_rot),
      interaction_U_(interaction_U),
      dt_(dt),
      transform_(grid_->size()),
      kinetic_phase_(grid_->size()),
      kinetic_decay_(grid_->size()),
      scratch_(grid_->size()) {
  potential_.validate(*grid_);
  const std::size_t n = grid_->size();
  const double r2 = grid_->radius() * grid_->radius();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = grid_->fft_winding(k);
    const double h = w * w / (2.0 * r2) - omega_rot_ * w;
    kinetic_phase_[k] = std::polar(inv_n, -dt_ * h);
    kinetic_decay_[k] = inv_n * std::exp(-dt_ * w * w / (2.0 * r2));
  }
  trap_moves_ = potential_.harmonic_omega != 0.0 &&
                !std::holds_alternative<FixedCenter>(potential_.trap_path);
  if (!trap_moves_) {
    PotentialSpec before = potential_;
    before.barrier_amplitude = 0.0;
    before.sample_into(*grid_, 0.0, v_before_);
    if (potential_.has_barrier()) {
      PotentialSpec after = potential_;
      after.barrier_on_time = 0.0;
      after.sample_into(*grid_, 0.0, v_after_);
    } else {
      v_after_ = v_before_;
    }
  }
}

const std::vector<double>& SplitStepPropagator::potential_at(double t) {
  if (trap_moves_) {
    potential_.sample_into(*grid_, t, v_moving_);
    return v_moving_;
  }
  const bool barrier_on =
      potential_.has_barrier() && t >= potential_.barrier_on_time;
  return barrier_on ? v_after_ : v_before_;
}

void SplitStepPropagator::potential_phase(Wavefunction& psi, double t_mid,
                                          double half_dt) {
  if (potential_.vanishes_at(t_mid) && interaction_U_ == 0.0) return;
  const auto& v = potential_at(t_mid);
  auto amps = psi.amps();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    const double phase = half_dt * (v[j] + interaction_U_ * std::norm(amps[j]));
    amps[j] *= cplx(std::cos(phase), -std::sin(phase));
  }
}

void SplitStepPropagator::spectral_multiply(Wavefunction& psi,
                                            const std::vector<cplx>& factor) {
  auto amps = psi.amps();
  transform_.forward(amps, scratch_);
  for (std::size_t k = 0; k < scratch_.size(); ++k) scratch_[k] *= factor[k];
  transform_.backward(scratch_, amps);
}

void SplitStepPropagator::step(Wavefunction& psi, double t) {
  const double t_mid = t + 0.5 * dt_;
  potential_phase(psi, t_mid, 0.5 * dt_);
  spectral_multiply(psi, kinetic_phase_);
  potential_phase(psi, t_mid, 0.5 * dt_);
}

void SplitStepPropagator::relax_step(Wavefunction& psi) {
  const auto& v = potential_at(0.0);
  auto amps = psi.amps();
  const double half = 0.5 * dt_;
  auto decay = [&] {
    for (std::size_t j = 0; j < amps.size(); ++j) {
      amps[j] *= std::exp(-half * (v[j] + interaction_U_ * std::norm(amps[j])));
    }
  };
  decay();
  spectral_multiply(psi, kinetic_decay_);
  decay();
  psi.normalize();
}

Wavefunction step(const Wavefunction& psi, const PotentialSpec& pot,
                  const EvolveParams& params, double t) {
  if (t + params.dt > params.t_final * (1.0 + 1e-12) + 1e-15) {
    throw ConfigError("step would advance past t_final");
  }
  SplitStepPropagator prop(psi.grid_ptr(), pot, params.omega_rot,
                           params.interaction_U, params.dt);
  Wavefunction out = psi;
  prop.step(out, t);
  return out;
}

Trajectory evolve(const Wavefunction& psi0, const PotentialSpec& pot,
                  const EvolveParams& params) {
  params.validate();
  SplitStepPropagator prop(psi0.grid_ptr(), pot, params.omega_rot,
                           params.interaction_U, params.dt);
  const auto save_steps = params.save_steps();
  const std::size_t total = params.total_steps();

  Trajectory out;
  out.reserve(save_steps.size());
  Wavefunction psi = psi0;
  std::size_t next = 0;
  for (std::size_t k = 0;; ++k) {
    while (next < save_steps.size() && save_steps[next] == k) {
      out.push_back({params.save_times[next], psi});
      ++next;
    }
    if (k >= total) break;
    prop.step(psi, static_cast<double>(k) * params.dt);
  }
  return out;
}

Wavefunction evolve_free_exact(const Wavefunction& psi, double omega_rot,
                               double t) {
  auto coeffs = to_spectrum(psi);
  const auto& grid = psi.grid();
  const double r2 = grid.radius() * grid.radius();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double w = grid.windings()[i];
    coeffs[i] *= std::polar(1.0, -t * (w * w / (2.0 * r2) - omega_rot * w));
  }
  return to_position(psi.grid_ptr(), coeffs);
}

}  // namespace ringgyro
