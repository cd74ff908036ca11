#include "ringgyro/initial_states.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "ringgyro/errors.hpp"

namespace ringgyro {

Wavefunction initial_state_kandes(const GridPtr& grid, double sigma,
                                  double k_kick) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  const double pi = std::numbers::pi;
  if (std::exp(-pi * pi / (2.0 * sigma * sigma)) >= 1e-8) {
    throw ConfigError("sigma = " + std::to_string(sigma) +
                      " rad leaves a Gaussian tail >= 1e-8 at theta = +-pi");
  }
  const double kr = k_kick * grid->radius();
  std::vector<cplx> amps(grid->size());
  const auto& theta = grid->theta();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    const double x = theta[j];
    amps[j] = std::exp(-x * x / (2.0 * sigma * sigma)) * std::cos(kr * x);
  }
  Wavefunction psi(grid, std::move(amps));
  psi.normalize();
  return psi;
}

Wavefunction gaussian_packet(const GridPtr& grid, double center, double sigma,
                             double mean_winding) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  std::vector<cplx> amps(grid->size());
  const auto& theta = grid->theta();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    const double d = wrap_angle(theta[j] - center);
    amps[j] = std::exp(-d * d / (2.0 * sigma * sigma)) *
              std::polar(1.0, mean_winding * theta[j]);
  }
  Wavefunction psi(grid, std::move(amps));
  psi.normalize();
  return psi;
}

Wavefunction initial_state_oam_pair(const GridPtr& grid, int ell) {
  if (static_cast<std::size_t>(std::abs(ell)) > grid->size() / 4) {
    throw ConfigError("|ell| = " + std::to_string(std::abs(ell)) +
                      " exceeds n_points/4");
  }
  const double scale = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  std::vector<cplx> amps(grid->size());
  const auto& theta = grid->theta();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    amps[j] = scale * 2.0 * std::cos(ell * theta[j]);
  }
  Wavefunction psi(grid, std::move(amps));
  // ell = 0 gives 2/sqrt(4pi); rescale so every ell is unit norm.
  psi.normalize();
  return psi;
}

Wavefunction plane_wave(const GridPtr& grid, int ell, double weight) {
  const double scale = std::sqrt(weight / (2.0 * std::numbers::pi));
  std::vector<cplx> amps(grid->size());
  const auto& theta = grid->theta();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    amps[j] = std::polar(scale, ell * theta[j]);
  }
  return Wavefunction(grid, std::move(amps));
}

SpinorState initial_state_oam_spinor(const GridPtr& grid, int ell) {
  if (static_cast<std::size_t>(std::abs(ell)) > grid->size() / 4) {
    throw ConfigError("|ell| exceeds n_points/4");
  }
  return SpinorState(plane_wave(grid, ell, 0.5), plane_wave(grid, -ell, 0.5));
}

}  // namespace ringgyro
