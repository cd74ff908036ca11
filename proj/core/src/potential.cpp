#include "ringgyro/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ringgyro/errors.hpp"

namespace ringgyro {

double trap_center(const TrapPath& path, double t) {
  struct Visitor {
    double t;
    double operator()(const FixedCenter& c) const { return c.theta0; }
    double operator()(const ConstantVelocity& c) const { return c.rate * t; }
    double operator()(const SinusoidalProfile& c) const {
      const double phase = 2.0 * std::numbers::pi * t / c.period;
      return c.direction * (phase - std::sin(phase));
    }
  };
  return std::visit(Visitor{t}, path);
}

PotentialSpec PotentialSpec::harmonic(double omega, TrapPath path) {
  PotentialSpec spec;
  spec.harmonic_omega = omega;
  spec.trap_path = path;
  return spec;
}

bool PotentialSpec::is_static() const noexcept {
  const bool moving_trap =
      harmonic_omega != 0.0 && !std::holds_alternative<FixedCenter>(trap_path);
  const bool switched_barrier = has_barrier() && barrier_on_time > 0.0;
  return !moving_trap && !switched_barrier;
}

bool PotentialSpec::vanishes_at(double t) const noexcept {
  return harmonic_omega == 0.0 && (!has_barrier() || t < barrier_on_time);
}

void PotentialSpec::validate(const RingGrid& grid) const {
  if (!std::isfinite(harmonic_omega) || !std::isfinite(barrier_amplitude) ||
      !std::isfinite(barrier_center) || !std::isfinite(barrier_on_time)) {
    throw ConfigError("potential parameters must be finite");
  }
  if (auto* s = std::get_if<SinusoidalProfile>(&trap_path);
      s != nullptr && !(s->period > 0.0)) {
    throw ConfigError("sinusoidal trap path needs a positive period");
  }
  if (has_barrier() && !(barrier_width >= 4.0 * grid.spacing() * (1.0 - 1e-12))) {
    throw ConfigError("barrier width " + std::to_string(barrier_width) +
                      " rad is below 4 grid spacings (" +
                      std::to_string(4.0 * grid.spacing()) + " rad)");
  }
}

double PotentialSpec::value(double theta, double t, double radius) const noexcept {
  double v = 0.0;
  if (harmonic_omega != 0.0) {
    const double d = wrap_angle(theta - trap_center(trap_path, t));
    v += 0.5 * harmonic_omega * harmonic_omega * radius * radius * d * d;
  }
  if (has_barrier() && t >= barrier_on_time) {
    const double d = wrap_angle(theta - barrier_center);
    const double w = barrier_width;
    v += barrier_amplitude / (std::sqrt(2.0 * std::numbers::pi) * w) *
         std::exp(-d * d / (2.0 * w * w));
  }
  return v;
}

void PotentialSpec::sample_into(const RingGrid& grid, double t,
                                std::vector<double>& out) const {
  const auto& theta = grid.theta();
  out.resize(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    out[j] = value(theta[j], t, grid.radius());
  }
}

std::vector<double> PotentialSpec::sample(const RingGrid& grid, double t) const {
  std::vector<double> out;
  sample_into(grid, t, out);
  return out;
}

double PotentialSpec::max_abs(const RingGrid& grid, double t) const {
  const auto v = sample(grid, t);
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace ringgyro
