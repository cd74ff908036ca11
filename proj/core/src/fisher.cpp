#include "ringgyro/fisher.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ringgyro {

Wavefunction scaled_difference(const Wavefunction& a, const Wavefunction& b,
                               double scale) {
  require_same_grid(a.grid(), b.grid());
  Wavefunction out(a.grid_ptr());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = (a[j] - b[j]) * scale;
  return out;
}

SpinorState scaled_difference(const SpinorState& a, const SpinorState& b,
                              double scale) {
  return SpinorState(scaled_difference(a.plus, b.plus, scale),
                     scaled_difference(a.minus, b.minus, scale));
}

double max_abs(const Wavefunction& a) {
  double m = 0.0;
  for (const auto& x : a.amps()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const SpinorState& a) {
  return std::max(max_abs(a.plus), max_abs(a.minus));
}

double max_abs_difference(const Wavefunction& a, const Wavefunction& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double max_abs_difference(const SpinorState& a, const SpinorState& b) {
  return std::max(max_abs_difference(a.plus, b.plus),
                  max_abs_difference(a.minus, b.minus));
}

double qfi(const Wavefunction& psi, const Wavefunction& dpsi) {
  require_same_grid(psi.grid(), dpsi.grid());
  const double dd = dpsi.norm();
  const cplx pd = overlap(psi, dpsi);
  return std::max(0.0, 4.0 * (dd - std::norm(pd)));
}

double spinor_qfi(const SpinorState& state, const SpinorState& dstate) {
  require_same_grid(state.grid(), dstate.grid());
  const double dd = dstate.joint_norm();
  const cplx pd = overlap(state.plus, dstate.plus) + overlap(state.minus, dstate.minus);
  return std::max(0.0, 4.0 * (dd - std::norm(pd)));
}

double analytic_qfi_free(const Wavefunction& psi0, double t) {
  return 4.0 * t * t * lz_moments(psi0).variance;
}

double analytic_qfi_free(const SpinorState& state0, double t) {
  return 4.0 * t * t * lz_moments(state0).variance;
}

std::vector<double> density_derivative(const Wavefunction& psi,
                                       const Wavefunction& dpsi) {
  require_same_grid(psi.grid(), dpsi.grid());
  std::vector<double> dp(psi.size());
  for (std::size_t j = 0; j < dp.size(); ++j) {
    dp[j] = 2.0 * std::real(std::conj(psi[j]) * dpsi[j]);
  }
  return dp;
}

namespace {

void require_lengths(std::span<const double> P, std::span<const double> dP,
                     const RingGrid& grid) {
  if (P.size() != grid.size() || dP.size() != grid.size()) {
    throw std::invalid_argument("CFI: density arrays do not match the grid");
  }
}

void require_probability(std::span<const double> P, std::span<const double> dP,
                         double dtheta) {
  double mass = 0.0;
  double dmass = 0.0;
  for (std::size_t j = 0; j < P.size(); ++j) {
    mass += P[j];
    dmass += dP[j];
  }
  mass *= dtheta;
  dmass *= dtheta;
  if (std::abs(mass - 1.0) > 1e-6) {
    throw std::invalid_argument("CFI: density integrates to " +
                                std::to_string(mass) + ", expected 1");
  }
  if (std::abs(dmass) > 1e-6) {
    throw std::invalid_argument("CFI: density derivative integrates to " +
                                std::to_string(dmass) + ", expected 0");
  }
}

// Sum dP^2/P dtheta over one periodic grid, with empty bins judged against
// `reference_max`. An isolated empty bin between occupied neighbours is a
// fringe node, where dP^2/P has a finite limit; it takes the mean of the
// neighbouring integrands. Wider empty regions contribute nothing.
CfiResult binned_sum(std::span<const double> P, std::span<const double> dP,
                     double dtheta, double reference_max) {
  const double threshold = kEmptyBinFraction * reference_max;
  const std::size_t n = P.size();
  auto occupied = [&](std::size_t j) { return P[j] > threshold; };
  auto integrand = [&](std::size_t j) { return dP[j] * dP[j] / P[j]; };
  CfiResult r;
  for (std::size_t j = 0; j < n; ++j) {
    if (occupied(j)) {
      r.value += integrand(j);
      continue;
    }
    r.excluded_mass += std::max(P[j], 0.0);
    const std::size_t left = (j + n - 1) % n;
    const std::size_t right = (j + 1) % n;
    if (n > 2 && occupied(left) && occupied(right)) {
      r.value += 0.5 * (integrand(left) + integrand(right));
    }
  }
  r.value *= dtheta;
  r.excluded_mass *= dtheta;
  return r;
}

double max_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// Two-outcome CFI; an outcome with zero probability contributes nothing.
CfiResult two_outcome(double p0, double p1, double dp0, double dp1) {
  const double threshold = kEmptyBinFraction * std::max(p0, p1);
  CfiResult r;
  for (auto [p, dp] : {std::pair{p0, dp0}, std::pair{p1, dp1}}) {
    if (p > threshold) {
      r.value += dp * dp / p;
    } else {
      r.excluded_mass += std::max(p, 0.0);
    }
  }
  return r;
}

}  // namespace

CfiResult cfi_density(std::span<const double> P, std::span<const double> dP,
                      const RingGrid& grid) {
  require_lengths(P, dP, grid);
  require_probability(P, dP, grid.spacing());
  return binned_sum(P, dP, grid.spacing(), max_of(P));
}

CfiResult cfi_left_right(std::span<const double> P, std::span<const double> dP,
                         const RingGrid& grid, double split_angle) {
  require_lengths(P, dP, grid);
  require_probability(P, dP, grid.spacing());
  const auto& theta = grid.theta();
  double p_left = 0.0, p_right = 0.0, dp_left = 0.0, dp_right = 0.0;
  for (std::size_t j = 0; j < P.size(); ++j) {
    if (theta[j] < split_angle) {
      p_left += P[j];
      dp_left += dP[j];
    } else {
      p_right += P[j];
      dp_right += dP[j];
    }
  }
  const double h = grid.spacing();
  return two_outcome(p_left * h, p_right * h, dp_left * h, dp_right * h);
}

CfiResult cfi_spin_population(double p_plus, double p_minus, double dp_plus,
                              double dp_minus) {
  if (std::abs(p_plus + p_minus - 1.0) > 1e-6) {
    throw std::invalid_argument("spin populations do not sum to 1");
  }
  if (std::abs(dp_plus + dp_minus) > 1e-6) {
    throw std::invalid_argument("spin population derivatives do not sum to 0");
  }
  return two_outcome(p_plus, p_minus, dp_plus, dp_minus);
}

CfiResult spinor_cfi_density(const SpinorState& state, const SpinorState& dstate) {
  require_same_grid(state.grid(), dstate.grid());
  const auto p_plus = density(state.plus);
  const auto p_minus = density(state.minus);
  const auto dp_plus = density_derivative(state.plus, dstate.plus);
  const auto dp_minus = density_derivative(state.minus, dstate.minus);

  const double h = state.grid().spacing();
  double mass = 0.0, dmass = 0.0;
  for (std::size_t j = 0; j < p_plus.size(); ++j) {
    mass += p_plus[j] + p_minus[j];
    dmass += dp_plus[j] + dp_minus[j];
  }
  if (std::abs(mass * h - 1.0) > 1e-6 || std::abs(dmass * h) > 1e-6) {
    throw std::invalid_argument("spinor CFI: joint density is not normalized");
  }
  const double reference = std::max(max_of(p_plus), max_of(p_minus));
  const auto a = binned_sum(p_plus, dp_plus, h, reference);
  const auto b = binned_sum(p_minus, dp_minus, h, reference);
  return {a.value + b.value, a.excluded_mass + b.excluded_mass};
}

CfiResult spinor_population_cfi(const SpinorState& state, const SpinorState& dstate) {
  const double p_plus = state.plus.norm();
  const double p_minus = state.minus.norm();
  const double dp_plus = 2.0 * std::real(overlap(state.plus, dstate.plus));
  const double dp_minus = 2.0 * std::real(overlap(state.minus, dstate.minus));
  return cfi_spin_population(p_plus, p_minus, dp_plus, dp_minus);
}

double sagnac_reference(double radius) {
  const double area = std::numbers::pi * radius * radius;
  return 4.0 * area * area;
}

double sagnac_phase(double omega, double area) { return 2.0 * omega * area; }

bool ordered_within_slack(double a, double b) {
  return a <= b * (1.0 + kOrderingSlack) + 1e-10;
}

std::vector<std::string> FisherSeries::invariant_violations() const {
  std::vector<std::string> out;
  auto check = [&](const std::vector<double>& lhs, const std::vector<double>& rhs,
                   const char* lhs_name, const char* rhs_name) {
    for (std::size_t i = 0; i < lhs.size() && i < rhs.size(); ++i) {
      if (!ordered_within_slack(lhs[i], rhs[i])) {
        std::ostringstream msg;
        msg.precision(10);
        msg << lhs_name << " = " << lhs[i] << " exceeds " << rhs_name << " = "
            << rhs[i] << " at t = " << times[i];
        out.push_back(msg.str());
      }
    }
  };
  check(f_c, f_q, "f_c", "f_q");
  if (f_lr) check(*f_lr, f_c, "f_lr", "f_c");
  if (f_spin) check(*f_spin, f_c, "f_spin", "f_c");
  return out;
}

}  // namespace ringgyro
