#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ringgyro/fisher.hpp"
#include "ringgyro/initial_states.hpp"
#include "ringgyro/spinor.hpp"

using namespace ringgyro;
using oracle::pi;

namespace {

std::vector<Snapshot<Wavefunction>> exact_run(const Wavefunction& psi0, double omega,
                                              const std::vector<double>& times) {
  std::vector<Snapshot<Wavefunction>> out;
  for (double t : times) out.push_back({t, evolve_free_exact(psi0, omega, t)});
  return out;
}

// Halkyard density and its Omega derivative at Omega = 0, evaluated on the grid.
std::pair<std::vector<double>, std::vector<double>> halkyard_density(const RingGrid& g, int ell,
                                                                     double t, double phase = 0.0) {
  std::vector<double> P(g.size()), dP(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = 2.0 * ell * (g.theta()[j] + phase);
    P[j] = (1.0 + std::cos(x)) / (2 * pi);
    dP[j] = -2.0 * ell * t * std::sin(x) / (2 * pi);
  }
  return {P, dP};
}

}  // namespace

TEST_CASE("central difference of a rotating plane wave") {
  const auto g = make_grid(64, 1.0);
  const int ell = 3;
  const auto psi0 = plane_wave(g, ell);
  const std::vector<double> times = {0.0, 0.5, 1.0, 2.0};
  OmegaRunner<Wavefunction> run = [&](double w) { return exact_run(psi0, w, times); };
  const double delta = 1e-3;
  const auto b = derivative_bundle(run, 0.0, delta);
  REQUIRE(b.derivative.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(b.derivative[i].time == times[i]);
    const auto& psi = b.base[i].state;
    const double lt = ell * times[i];
    double worst = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j) {
      worst = std::max(worst, std::abs(b.derivative[i].state[j] - cplx(0, lt) * psi[j]));
    }
    // Truncation error of the central difference: |psi| (l t)^3 delta^2 / 6.
    CHECK(worst <= 1.1 * std::pow(lt, 3) * delta * delta / 6 / std::sqrt(2 * pi) + 1e-12);
    CHECK(qfi(psi, b.derivative[i].state) < 1e-9);
  }
  CHECK(b.converged);
}

TEST_CASE("derivative bundle runs serially or concurrently with identical results") {
  const auto g = make_grid(256, 1.0);
  const auto psi0 = initial_state_oam_pair(g, 2);
  const std::vector<double> times = {0.0, 0.3, 0.6};
  OmegaRunner<Wavefunction> run = [&](double w) { return exact_run(psi0, w, times); };
  const auto serial = derivative_bundle(run, 0.1, 1e-3, 1);
  const auto parallel = derivative_bundle(run, 0.1, 1e-3, 5);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(oracle::max_abs_diff(serial.derivative[i].state, parallel.derivative[i].state) == 0.0);
  }
  CHECK_THROWS_AS(derivative_bundle(run, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("Richardson residual shrinks four-fold when delta halves") {
  const auto g = make_grid(2048, 1.0);
  const auto psi0 = initial_state_kandes(g, 0.5, 20.0);
  const std::vector<double> times = {pi / 20, 2 * pi / 20};
  OmegaRunner<Wavefunction> run = [&](double w) { return exact_run(psi0, w, times); };
  const auto coarse = derivative_bundle(run, 0.0, 0.2);
  const auto fine = derivative_bundle(run, 0.0, 0.1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double ratio = coarse.richardson_residual[i] / fine.richardson_residual[i];
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("Kandes derivative is antisymmetric under theta -> -theta") {
  const auto g = make_grid(2048, 1.0);
  const auto psi0 = initial_state_kandes(g, 0.5, 20.0);
  const std::vector<double> times = {0.05, pi / 20, 0.4};
  OmegaRunner<Wavefunction> run = [&](double w) {
    EvolveParams p;
    p.dt = 1e-4;
    p.t_final = 0.4;
    p.omega_rot = w;
    p.save_times = {0.05, std::round(pi / 20 / 1e-4) * 1e-4, 0.4};
    return evolve(psi0, PotentialSpec::free(), p);
  };
  const auto b = derivative_bundle(run, 0.0, 1e-3);
  const std::size_t n = g->size();
  for (const auto& snap : b.derivative) {
    const double scale = max_abs(snap.state);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(snap.state[j] + snap.state[(n - j) % n]));
    }
    CHECK(worst < 1e-9 * scale);
  }
}

TEST_CASE("QFI closed forms") {
  const auto g = make_grid(2048, 1.0);
  SUBCASE("phase-only derivative carries no information") {
    const auto psi = plane_wave(g, 4);
    Wavefunction d = psi;
    for (auto& a : d.amps()) a *= cplx(0, 4 * 0.7);
    CHECK(qfi(psi, d) < 1e-10);
  }
  SUBCASE("OAM pair and Kandes state match 4 t^2 Var(L_z)") {
    const double t = pi / 20;
    for (const auto& psi0 : {initial_state_oam_pair(g, 1), initial_state_oam_pair(g, 5),
                             initial_state_kandes(g, 0.5, 20.0)}) {
      OmegaRunner<Wavefunction> run = [&](double w) { return exact_run(psi0, w, {t}); };
      const auto b = derivative_bundle(run, 0.0, 1e-4);
      const double f = qfi(b.base[0].state, b.derivative[0].state);
      CHECK(f == doctest::Approx(analytic_qfi_free(psi0, t)).epsilon(1e-6));
    }
    CHECK(analytic_qfi_free(initial_state_oam_pair(g, 5), 2.0) == doctest::Approx(oracle::halkyard_fisher(5, 2.0)));
    CHECK(analytic_qfi_free(initial_state_kandes(g, 0.5, 20.0), 1.5) == doctest::Approx(4 * 2.25 * 402.0).epsilon(1e-9));
  }
  SUBCASE("Kandes at T_c is close to F_S") {
    CHECK(analytic_qfi_free(initial_state_kandes(g, 0.5, 20.0), pi / 20) / oracle::sagnac(1.0) ==
          doctest::Approx(1.005).epsilon(1e-4));
  }
  SUBCASE("single plane wave stays at zero") {
    for (double t : {0.0, 1.0, 5.0}) CHECK(analytic_qfi_free(plane_wave(g, 3), t) < 1e-9);
  }
}

TEST_CASE("QFI is invariant under dpsi -> dpsi + i c psi") {
  const auto g = make_grid(256, 1.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> c_dist(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = oracle::random_state(g, rng, 6);
    auto d = oracle::random_state(g, rng, 6);
    for (auto& a : d.amps()) a *= 3.0;
    const double base = qfi(psi, d);
    const double c = c_dist(rng);
    Wavefunction shifted = d;
    for (std::size_t j = 0; j < g->size(); ++j) shifted[j] += cplx(0, c) * psi[j];
    CHECK(std::abs(qfi(psi, shifted) - base) / base < 1e-8);
  }
}

TEST_CASE("CFI closed forms") {
  const auto g = make_grid(512, 1.0);
  SUBCASE("uniform density with no derivative") {
    std::vector<double> P(512, 1 / (2 * pi)), dP(512, 0.0);
    CHECK(cfi_density(P, dP, *g).value == 0.0);
    CHECK(cfi_left_right(P, dP, *g).value == 0.0);
  }
  SUBCASE("Halkyard fringes give 4 ell^2 t^2") {
    for (int ell : {1, 5}) {
      for (double phase : {0.0, 0.0123}) {
        const auto [P, dP] = halkyard_density(*g, ell, 0.8, phase);
        CHECK(cfi_density(P, dP, *g).value == doctest::Approx(oracle::halkyard_fisher(ell, 0.8)).epsilon(1e-4));
      }
    }
  }
  SUBCASE("fringe nodes on grid points do not bias the sum") {
    const auto coarse = make_grid(256, 1.0);
    const auto [P, dP] = halkyard_density(*coarse, 1, 1.0);
    const auto r = cfi_density(P, dP, *coarse);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(r.excluded_mass < 1e-20);
  }
  SUBCASE("symmetric density with antisymmetric derivative is invisible to left/right") {
    const auto [P, dP] = halkyard_density(*g, 2, 1.0, pi / 4);
    CHECK(cfi_left_right(P, dP, *g).value < 1e-20);
  }
  SUBCASE("two-outcome formula") {
    std::vector<double> P(512, 1 / (2 * pi)), dP(512);
    const double d = 0.3;
    for (std::size_t j = 0; j < 512; ++j) dP[j] = (g->theta()[j] < 0 ? d : -d) / pi;
    // P_L = P_R = 1/2, dP_L = -dP_R = d.
    CHECK(cfi_left_right(P, dP, *g).value == doctest::Approx(4 * d * d).epsilon(1e-12));
  }
}

TEST_CASE("CFI is resolution independent for smooth densities") {
  auto smooth = [](std::size_t n) {
    const auto g = make_grid(n, 1.0);
    const auto psi = gaussian_packet(g, 0.2, 0.4, 3.0);
    const double h = 1e-5;
    auto d = scaled_difference(gaussian_packet(g, 0.2 + h, 0.4, 3.0),
                               gaussian_packet(g, 0.2 - h, 0.4, 3.0), 0.5 / h);
    for (std::size_t j = 0; j < n; ++j) d[j] += cplx(0, std::sin(2 * g->theta()[j])) * psi[j];
    const auto P = density(psi);
    return cfi_density(P, density_derivative(psi, d), *g).value;
  };
  for (std::size_t n : {128u, 512u}) CHECK(smooth(2 * n) == doctest::Approx(smooth(n)).epsilon(5e-3));
}

TEST_CASE("Kandes packets between collisions carry no density information") {
  const auto g = make_grid(2048, 1.0);
  const auto psi0 = initial_state_kandes(g, 0.5, 20.0);
  const double t = 0.5 * pi / 20;
  OmegaRunner<Wavefunction> run = [&](double w) { return exact_run(psi0, w, {t}); };
  const auto b = derivative_bundle(run, 0.0, 1e-3);
  const auto P = density(b.base[0].state);
  const auto dP = density_derivative(b.base[0].state, b.derivative[0].state);
  const double fc = cfi_density(P, dP, *g).value;
  const double fq = qfi(b.base[0].state, b.derivative[0].state);
  CHECK(fc < 0.01 * fq);
  CHECK(ordered_within_slack(fc, fq));
}

TEST_CASE("spin population CFI") {
  CHECK(cfi_spin_population(0.5, 0.5, 0.0, 0.0).value == 0.0);
  for (int ell : {1, 5}) {
    const double T = 0.7;
    CHECK(cfi_spin_population(0.5, 0.5, ell * T, -ell * T).value ==
          doctest::Approx(oracle::halkyard_fisher(ell, T)).epsilon(1e-12));
  }
  const auto empty = cfi_spin_population(1.0, 0.0, 0.0, 0.0);
  CHECK(std::isfinite(empty.value));
  CHECK(empty.value == 0.0);
  CHECK_THROWS_AS(cfi_spin_population(0.6, 0.6, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cfi_spin_population(0.5, 0.5, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("spinor estimators") {
  const auto g = make_grid(256, 1.0);
  const double t = 0.6;
  for (int ell : {1, 5}) {
    const auto s0 = initial_state_oam_spinor(g, ell);
    auto at = [&](double w) {
      SpinorState s = s0;
      s.plus = evolve_free_exact(s0.plus, w, t);
      s.minus = evolve_free_exact(s0.minus, w, t);
      return s;
    };
    const double delta = 1e-4;
    const SpinorState pre = at(0.0);
    const SpinorState dpre = scaled_difference(at(delta), at(-delta), 0.5 / delta);
    SUBCASE("before the pulse: full QFI, no density information") {
      CHECK(spinor_qfi(pre, dpre) == doctest::Approx(oracle::halkyard_fisher(ell, t)).epsilon(1e-7));
      CHECK(spinor_cfi_density(pre, dpre).value < 1e-10);
      CHECK(spinor_population_cfi(pre, dpre).value < 1e-10);
      CHECK(analytic_qfi_free(s0, t) == doctest::Approx(oracle::halkyard_fisher(ell, t)).epsilon(1e-12));
    }
    SUBCASE("after the Raman pulse: spin readout saturates the QFI") {
      const auto post = raman_pulse(pre, ell);
      const auto dpost = raman_pulse(dpre, ell);
      CHECK(spinor_qfi(post, dpost) == doctest::Approx(oracle::halkyard_fisher(ell, t)).epsilon(1e-7));
      CHECK(spinor_population_cfi(post, dpost).value == doctest::Approx(oracle::halkyard_fisher(ell, t)).epsilon(1e-7));
      CHECK(spinor_cfi_density(post, dpost).value == doctest::Approx(oracle::halkyard_fisher(ell, t)).epsilon(1e-7));
    }
  }
  SUBCASE("one empty component reduces to the single-component estimators") {
    const auto psi0 = initial_state_oam_pair(g, 2);
    const auto psi = evolve_free_exact(psi0, 0.0, t);
    const auto dpsi = scaled_difference(evolve_free_exact(psi0, 1e-4, t), evolve_free_exact(psi0, -1e-4, t), 0.5e4);
    const SpinorState s(psi, Wavefunction(g));
    const SpinorState ds(dpsi, Wavefunction(g));
    CHECK(spinor_qfi(s, ds) == doctest::Approx(qfi(psi, dpsi)).epsilon(1e-12));
    const auto P = density(psi);
    CHECK(spinor_cfi_density(s, ds).value == doctest::Approx(cfi_density(P, density_derivative(psi, dpsi), *g).value).epsilon(1e-12));
  }
}

TEST_CASE("Sagnac reference") {
  CHECK(sagnac_reference(1.0) == doctest::Approx(4 * pi * pi).epsilon(1e-15));
  CHECK(sagnac_reference(1.0) == doctest::Approx(39.478417604).epsilon(1e-10));
  CHECK(sagnac_reference(5.0) == doctest::Approx(oracle::sagnac(5.0)));
  CHECK(sagnac_phase(0.0, pi) == 0.0);
  CHECK(sagnac_phase(0.1, pi) == doctest::Approx(0.2 * pi));
  for (int n : {1, 2, 3}) CHECK(n * n * sagnac_reference(1.0) == doctest::Approx(n * n * 39.478417604));
}

TEST_CASE("estimator input validation") {
  const auto g = make_grid(64, 1.0);
  std::vector<double> P(64, 1 / (2 * pi)), dP(64, 0.0);
  CHECK_THROWS_AS(cfi_density(std::vector<double>(32, 0.0), std::vector<double>(32, 0.0), *g), std::invalid_argument);
  std::vector<double> heavy(64, 1 / pi);
  CHECK_THROWS_AS(cfi_density(heavy, dP, *g), std::invalid_argument);
  std::vector<double> drift(64, 0.1);
  CHECK_THROWS_AS(cfi_density(P, drift, *g), std::invalid_argument);
}

TEST_CASE("FisherSeries invariants") {
  FisherSeries s;
  s.times = {0.0, 1.0, 2.0};
  s.f_q = {0.0, 4.0, 16.0};
  s.f_c = {0.0, 4.002, 10.0};
  CHECK(s.invariant_violations().empty());
  s.f_c[2] = 16.1;
  CHECK(s.invariant_violations().size() == 1);
  s.f_c[2] = 10.0;
  s.f_lr = std::vector<double>{0.0, 1.0, 11.0};
  CHECK(s.invariant_violations().size() == 1);
  s.f_lr = std::nullopt;
  s.f_spin = std::vector<double>{1e-12, 4.0, 10.0};
  CHECK(s.invariant_violations().empty());
  CHECK(ordered_within_slack(1.0009, 1.0));
  CHECK_FALSE(ordered_within_slack(1.0011, 1.0));
  CHECK(ordered_within_slack(5e-11, 0.0));
}
