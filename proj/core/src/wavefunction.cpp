#include "ringgyro/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ringgyro/errors.hpp"
#include "ringgyro/potential.hpp"

namespace ringgyro {

Wavefunction::Wavefunction(GridPtr grid, std::vector<cplx> amps)
    : grid_(std::move(grid)), amps_(std::move(amps)) {
  if (!grid_) throw std::invalid_argument("Wavefunction: null grid");
  if (amps_.size() != grid_->size()) {
    throw GridMismatchError("Wavefunction: " + std::to_string(amps_.size()) +
                            " amplitudes for a grid of " +
                            std::to_string(grid_->size()) + " points");
  }
}

Wavefunction::Wavefunction(GridPtr grid)
    : Wavefunction(grid, std::vector<cplx>(grid ? grid->size() : 0)) {}

double Wavefunction::norm() const noexcept {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum * grid_->spacing();
}

void Wavefunction::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::domain_error("cannot normalize a zero state");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& a : amps_) a *= scale;
}

SpinorState::SpinorState(Wavefunction p, Wavefunction m)
    : plus(std::move(p)), minus(std::move(m)) {
  require_same_grid(plus.grid(), minus.grid());
}

void require_same_grid(const RingGrid& a, const RingGrid& b) {
  if (!a.same_as(b)) {
    throw GridMismatchError("grid mismatch: (" + std::to_string(a.size()) +
                            ", R=" + std::to_string(a.radius()) + ") vs (" +
                            std::to_string(b.size()) +
                            ", R=" + std::to_string(b.radius()) + ")");
  }
}

// theta_j = -pi + j dtheta, so e^{-in theta_j} = (-1)^n e^{-2pi i nj/N}.
std::vector<cplx> to_spectrum(const Wavefunction& psi) {
  const auto& grid = psi.grid();
  const std::size_t n = grid.size();
  std::vector<cplx> fft(n);
  cached_transform(n).forward(psi.amps(), fft);

  const double scale = grid.spacing() / std::sqrt(2.0 * std::numbers::pi);
  std::vector<cplx> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int w = grid.fft_winding(k);
    const double sign = (w % 2 == 0) ? 1.0 : -1.0;
    coeffs[static_cast<std::size_t>(w + static_cast<int>(n / 2))] =
        sign * scale * fft[k];
  }
  return coeffs;
}

Wavefunction to_position(GridPtr grid, std::span<const cplx> coeffs) {
  const std::size_t n = grid->size();
  if (coeffs.size() != n) {
    throw GridMismatchError("to_position: coefficient count does not match grid");
  }
  std::vector<cplx> fft(n);
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < n; ++k) {
    const int w = grid->fft_winding(k);
    const double sign = (w % 2 == 0) ? 1.0 : -1.0;
    fft[k] = sign * scale *
             coeffs[static_cast<std::size_t>(w + static_cast<int>(n / 2))];
  }
  std::vector<cplx> amps(n);
  cached_transform(n).backward(fft, amps);
  return Wavefunction(std::move(grid), std::move(amps));
}

namespace {

struct RawMoments {
  double weight = 0.0;
  double first = 0.0;
  double second = 0.0;
};

RawMoments raw_lz_moments(const Wavefunction& psi) {
  const auto coeffs = to_spectrum(psi);
  const auto& windings = psi.grid().windings();
  RawMoments m;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double p = std::norm(coeffs[i]);
    const double w = windings[i];
    m.weight += p;
    m.first += w * p;
    m.second += w * w * p;
  }
  return m;
}

LzMoments finish(const RawMoments& m) {
  const double mean = m.first / m.weight;
  const double variance = std::max(0.0, m.second / m.weight - mean * mean);
  return {mean, variance};
}

}  // namespace

LzMoments lz_moments(const Wavefunction& psi) {
  return finish(raw_lz_moments(psi));
}

LzMoments lz_moments(const SpinorState& state) {
  const auto a = raw_lz_moments(state.plus);
  const auto b = raw_lz_moments(state.minus);
  return finish({a.weight + b.weight, a.first + b.first, a.second + b.second});
}

std::vector<double> density(const Wavefunction& psi) {
  std::vector<double> p(psi.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::norm(psi[j]);
  return p;
}

cplx overlap(const Wavefunction& a, const Wavefunction& b) {
  require_same_grid(a.grid(), b.grid());
  cplx sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::conj(a[j]) * b[j];
  return sum * a.grid().spacing();
}

double energy(const Wavefunction& psi, const PotentialSpec& potential,
              double interaction_U, double t, double omega_rot) {
  const auto& grid = psi.grid();
  const double r2 = grid.radius() * grid.radius();

  const auto coeffs = to_spectrum(psi);
  double kinetic = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double w = grid.windings()[i];
    kinetic += (w * w / (2.0 * r2) - omega_rot * w) * std::norm(coeffs[i]);
  }

  const auto v = potential.sample(grid, t);
  double pot = 0.0;
  double quartic = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double p = std::norm(psi[j]);
    pot += v[j] * p;
    quartic += p * p;
  }
  const double dtheta = grid.spacing();
  return kinetic + pot * dtheta + 0.5 * interaction_U * quartic * dtheta;
}

}  // namespace ringgyro
