#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>

#include "ringgyro/errors.hpp"
#include "ringgyro/scheme_config.hpp"

using namespace ringgyro;
namespace fs = std::filesystem;

TEST_CASE("scheme ids round-trip") {
  CHECK(all_schemes().size() == 7);
  for (SchemeId id : all_schemes()) CHECK(parse_scheme_id(to_string(id)) == id);
  CHECK_THROWS_AS(parse_scheme_id("kandes"), ConfigError);
  CHECK(is_spinor_scheme(SchemeId::halkyard_two_spin));
  CHECK(is_spinor_scheme(SchemeId::stevenson_sinusoidal));
  CHECK_FALSE(is_spinor_scheme(SchemeId::halkyard_oam));
  CHECK_FALSE(is_spinor_scheme(SchemeId::kandes_free));
}

TEST_CASE("per-scheme defaults") {
  const auto k = SchemeConfig::defaults(SchemeId::kandes_free);
  CHECK(k.n_points == 2048);
  CHECK(k.resolved_radius() == 1.0);
  CHECK(k.resolved_k_kick() == 20.0);
  CHECK(k.sigma == 0.5);
  CHECK(k.characteristic_time() == doctest::Approx(std::numbers::pi / 20));
  CHECK(k.resolved_t_final() == doctest::Approx(3 * std::numbers::pi / 20));
  CHECK(k.resolved_delta() == 1e-3);
  CHECK(k.interaction_U == 0.0);

  CHECK(SchemeConfig::defaults(SchemeId::kandes_interacting).interaction_U == 0.2);

  const auto h = SchemeConfig::defaults(SchemeId::helm_barrier);
  CHECK(h.resolved_barrier_on_time() == doctest::Approx(std::numbers::pi / 20));
  CHECK(h.resolved_barrier_width() == doctest::Approx(16 * std::numbers::pi / 2048));
  CHECK_FALSE(h.barrier_amplitude.has_value());

  const auto o = SchemeConfig::defaults(SchemeId::halkyard_oam);
  CHECK(o.characteristic_time() == 0.0);
  CHECK(o.resolved_t_final() == 1.0);
  CHECK(o.ell == 1);

  const auto s = SchemeConfig::defaults(SchemeId::stevenson_sinusoidal);
  CHECK(s.resolved_radius() == 5.0);
  CHECK(s.characteristic_time() == 5.0);
  CHECK(s.resolved_t_final() == 5.0);
  CHECK(s.resolved_delta() == doctest::Approx(4e-5));
  SchemeConfig tight = s;
  tight.trap_omega = 4.0;
  CHECK(tight.resolved_radius() == 2.5);
  CHECK(tight.characteristic_time() == 1.25);

  for (SchemeId id : all_schemes()) CHECK_NOTHROW(SchemeConfig::defaults(id).validate());
}

TEST_CASE("parsing sections, comments and quotes") {
  const auto c = parse_scheme_config(R"(
# leading comment
[scheme]
id = "helm_barrier"

; other comment style
[grid]
n_points = 4096
radius = '2.0'

[evolution]
interaction_U = -0.3
horizon_tc = 2.5

[barrier]
amplitude = 12.5
target_reflection = 0.25

[fisher]
threads = 2
)");
  CHECK(c.id == SchemeId::helm_barrier);
  CHECK(c.n_points == 4096);
  CHECK(c.resolved_radius() == 2.0);
  CHECK(c.resolved_k_kick() == 10.0);
  CHECK(c.interaction_U == -0.3);
  CHECK(c.resolved_t_final() == doctest::Approx(2.5 * std::numbers::pi * 2.0 / 10.0));
  CHECK(c.barrier_amplitude == 12.5);
  CHECK(c.target_reflection == 0.25);
  CHECK(c.threads == 2);
  CHECK(c.resolved_delta() == doctest::Approx(2.5e-4));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_scheme_config("[grid]\nn_points = 64\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = warp_drive\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = kandes_free\n[grid]\nwidth = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = kandes_free\n[tachyon]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = kandes_free\n[grid]\nn_points = many\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = kandes_free\n[grid]\nn_points = 12.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = kandes_free\n[evolution]\ndt = 1e-4 # inline\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = kandes_free\n[evolution]\ndt = nan\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme\nid = kandes_free\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("stray = 1\n[scheme]\nid = kandes_free\n"), ConfigError);
  CHECK_THROWS_AS(parse_scheme_config("[scheme]\nid = kandes_free\n[scheme]\nid = helm_barrier\n"), ConfigError);
  CHECK_THROWS_AS(load_scheme_config("/nonexistent/ringgyro.toml"), ConfigError);
}

TEST_CASE("validation") {
  auto base = [] { return SchemeConfig::defaults(SchemeId::kandes_free); };
  auto rejects = [](SchemeConfig c) { CHECK_THROWS_AS(c.validate(), ConfigError); };
  { auto c = base(); c.dt = 0.0; rejects(c); }
  { auto c = base(); c.dt = -1e-4; rejects(c); }
  { auto c = base(); c.radius = 0.0; rejects(c); }
  { auto c = base(); c.sigma = -0.5; rejects(c); }
  { auto c = base(); c.delta = 0.0; rejects(c); }
  { auto c = base(); c.threads = 0; rejects(c); }
  { auto c = base(); c.save_intervals = 0; rejects(c); }
  { auto c = base(); c.n_points = 1 << 20; rejects(c); }
  { auto c = base(); c.k_kick = -1.0; rejects(c); }
  { auto c = base(); c.interaction_U = INFINITY; rejects(c); }
  { auto c = SchemeConfig::defaults(SchemeId::helm_barrier); c.target_reflection = 1.0; rejects(c); }
  { auto c = SchemeConfig::defaults(SchemeId::stevenson_const_velocity); c.trap_omega = 0.0; rejects(c); }
  { auto c = SchemeConfig::defaults(SchemeId::halkyard_oam); c.t_final.reset(); rejects(c); }
}

TEST_CASE("overrides") {
  auto c = SchemeConfig::defaults(SchemeId::kandes_free);
  apply_override(c, "evolution.interaction_U", "0.1");
  CHECK(c.interaction_U == 0.1);
  apply_override(c, "evolution.t_final", "0.5");
  CHECK(c.resolved_t_final() == 0.5);
  apply_override(c, "evolution.horizon_tc", "2");
  CHECK(c.resolved_t_final() == doctest::Approx(2 * std::numbers::pi / 20));
  apply_override(c, "scheme.id", "kandes_free");
  CHECK_THROWS_AS(apply_override(c, "scheme.id", "helm_barrier"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "grid.n_points", "0"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "grid.n_points", "-8"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "fisher.unknown", "1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "fisher.delta", ""), ConfigError);
}

TEST_CASE("shipped configs load") {
  const fs::path dir = RINGGYRO_CONFIG_DIR;
  const std::map<std::string, SchemeId> expected = {
      {"kandes_free.toml", SchemeId::kandes_free},
      {"kandes_interacting.toml", SchemeId::kandes_interacting},
      {"helm_barrier.toml", SchemeId::helm_barrier},
      {"halkyard_oam.toml", SchemeId::halkyard_oam},
      {"halkyard_two_spin.toml", SchemeId::halkyard_two_spin},
      {"stevenson_const_velocity.toml", SchemeId::stevenson_const_velocity},
      {"stevenson_sinusoidal.toml", SchemeId::stevenson_sinusoidal},
  };
  for (const auto& [file, id] : expected) {
    CAPTURE(file);
    const auto c = load_scheme_config(dir / file);
    CHECK(c.id == id);
    const auto d = SchemeConfig::defaults(id);
    if (id == SchemeId::kandes_interacting) CHECK(c.interaction_U == 0.2);
    if (id == SchemeId::helm_barrier) CHECK(c.target_reflection == 0.5);
    CHECK(c.ell == 1);
    CHECK(c.n_points == d.n_points);
    CHECK(describe(c) == describe(d));
  }
  const auto ref = load_scheme_config(dir / "reference.toml");
  CHECK(describe(ref) == describe(SchemeConfig::defaults(SchemeId::kandes_free)));
}

TEST_CASE("describe lists every key once in a fixed order") {
  const auto d = describe(SchemeConfig::defaults(SchemeId::helm_barrier));
  CHECK(d.size() == 20);
  CHECK(d.front().first == "scheme.id");
  CHECK(d.front().second == "helm_barrier");
  std::map<std::string, std::string> m(d.begin(), d.end());
  CHECK(m.size() == d.size());
  CHECK(m["barrier.amplitude"] == "calibrate");
  CHECK(std::stod(m["evolution.t_final"]) == 3 * std::numbers::pi / 20);
  CHECK(m["grid.n_points"] == "2048");
}
