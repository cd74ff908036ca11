#include "ringgyro/barrier.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ringgyro/errors.hpp"
#include "ringgyro/initial_states.hpp"
#include "ringgyro/propagator.hpp"

namespace ringgyro {

double barrier_reflection(const GridPtr& grid, double k_kick, double amplitude,
                          const BarrierProbe& probe) {
  const double pi = std::numbers::pi;
  const double r = grid->radius();
  Wavefunction psi = gaussian_packet(grid, -pi / 2.0, probe.sigma, k_kick * r);

  PotentialSpec pot;
  pot.barrier_amplitude = amplitude;
  pot.barrier_width = probe.width;
  pot.barrier_center = 0.0;
  pot.barrier_on_time = 0.0;

  const double duration = pi * r / k_kick;
  const auto steps =
      static_cast<std::size_t>(std::ceil(duration / probe.dt - 1e-9));
  const double dt = duration / static_cast<double>(steps);

  SplitStepPropagator prop(grid, pot, 0.0, 0.0, dt);
  for (std::size_t k = 0; k < steps; ++k) {
    prop.step(psi, static_cast<double>(k) * dt);
  }

  const auto& theta = grid->theta();
  double left = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (theta[j] < 0.0) left += std::norm(psi[j]);
  }
  return left * grid->spacing();
}

BarrierCalibration calibrate_barrier(double k_kick, const GridPtr& grid,
                                     const BarrierProbe& probe,
                                     double target_reflection) {
  if (!(target_reflection > 0.0 && target_reflection < 1.0)) {
    throw ConfigError("target reflection must lie in (0, 1)");
  }
  if (!(k_kick > 0.0)) throw ConfigError("k_kick must be positive");

  constexpr double tolerance = 2e-3;
  std::size_t evaluations = 0;
  auto reflect = [&](double a) {
    ++evaluations;
    return barrier_reflection(grid, k_kick, a, probe);
  };

  double lo = 0.0;
  double r_lo = reflect(lo);
  // Delta-barrier estimate: R = beta^2 / (beta^2 + n^2) with beta = R^2 A.
  const double r2 = grid->radius() * grid->radius();
  double hi = 2.0 * k_kick * grid->radius() / r2;
  double r_hi = reflect(hi);
  for (int i = 0; i < 40 && r_hi < target_reflection; ++i) {
    lo = hi;
    r_lo = r_hi;
    hi *= 2.0;
    r_hi = reflect(hi);
  }
  if (!(r_lo <= target_reflection && r_hi >= target_reflection)) {
    std::ostringstream msg;
    msg << "barrier calibration could not bracket reflection "
        << target_reflection << ": R(" << lo << ") = " << r_lo << ", R(" << hi
        << ") = " << r_hi;
    throw ConvergenceError(msg.str(), r_hi - target_reflection);
  }

  double mid = 0.5 * (lo + hi);
  double r_mid = 0.0;
  for (int i = 0; i < 80; ++i) {
    mid = 0.5 * (lo + hi);
    r_mid = reflect(mid);
    if (std::abs(r_mid - target_reflection) < tolerance) {
      return {mid, r_mid, evaluations};
    }
    if (r_mid < target_reflection) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("barrier calibration stalled at amplitude " +
                             std::to_string(mid),
                         r_mid - target_reflection);
}

}  // namespace ringgyro
