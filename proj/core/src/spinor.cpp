#include "ringgyro/spinor.hpp"

#include <cmath>

namespace ringgyro {

SpinorTrajectory evolve_spinor(const SpinorState& state,
                               const SpinorPotential& pot,
                               const EvolveParams& params) {
  params.validate();
  require_same_grid(state.plus.grid(), state.minus.grid());
  const auto& grid = state.plus.grid_ptr();
  SplitStepPropagator prop_plus(grid, pot.plus, params.omega_rot,
                                params.interaction_U, params.dt);
  SplitStepPropagator prop_minus(grid, pot.minus, params.omega_rot,
                                 params.interaction_U, params.dt);

  const auto save_steps = params.save_steps();
  const std::size_t total = params.total_steps();
  SpinorTrajectory out;
  out.reserve(save_steps.size());
  SpinorState s = state;
  std::size_t next = 0;
  for (std::size_t k = 0;; ++k) {
    while (next < save_steps.size() && save_steps[next] == k) {
      out.push_back({params.save_times[next], s});
      ++next;
    }
    if (k >= total) break;
    const double t = static_cast<double>(k) * params.dt;
    prop_plus.step(s.plus, t);
    prop_minus.step(s.minus, t);
  }
  return out;
}

namespace {

// psi_{+-1} -> (psi_{+-1} + coupling * psi_{-+1} e^{+-2i ell theta}) / sqrt(2)
SpinorState beamsplitter(const SpinorState& state, int ell, cplx coupling) {
  const auto& grid = state.grid();
  const auto& theta = grid.theta();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  SpinorState out = state;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const cplx twist = ell == 0 ? cplx(1.0) : std::polar(1.0, 2.0 * ell * theta[j]);
    const cplx p = state.plus[j];
    const cplx m = state.minus[j];
    out.plus[j] = inv_sqrt2 * (p + coupling * m * twist);
    out.minus[j] = inv_sqrt2 * (m + coupling * p * std::conj(twist));
  }
  return out;
}

}  // namespace

SpinorState raman_pulse(const SpinorState& state, int ell) {
  return beamsplitter(state, ell, cplx(0.0, -1.0));
}

SpinorState raman_pulse_inverse(const SpinorState& state, int ell) {
  return beamsplitter(state, ell, cplx(0.0, 1.0));
}

SpinorState microwave_pulse(const SpinorState& state) {
  return beamsplitter(state, 0, cplx(0.0, -1.0));
}

std::vector<double> jz_density(const SpinorState& state) {
  std::vector<double> jz(state.plus.size());
  for (std::size_t j = 0; j < jz.size(); ++j) {
    jz[j] = 0.5 * (std::norm(state.plus[j]) - std::norm(state.minus[j]));
  }
  return jz;
}

}  // namespace ringgyro
