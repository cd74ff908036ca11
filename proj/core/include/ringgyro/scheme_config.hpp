#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ringgyro {

enum class SchemeId {
  kandes_free,
  kandes_interacting,
  helm_barrier,
  halkyard_oam,
  halkyard_two_spin,
  stevenson_const_velocity,
  stevenson_sinusoidal,
};

std::string_view to_string(SchemeId id);
/// Throws ConfigError for unknown names.
SchemeId parse_scheme_id(std::string_view name);
const std::vector<SchemeId>& all_schemes();

bool is_spinor_scheme(SchemeId id);

/// User-facing parameters of one scheme. Optional fields are derived from the
/// others when unset (see `resolve`).
struct SchemeConfig {
  SchemeId id = SchemeId::kandes_free;

  // [grid]
  std::size_t n_points = 2048;
  std::optional<double> radius;

  // [evolution]
  double interaction_U = 0.0;
  double dt = 1e-4;
  /// Absolute horizon; wins over horizon_tc when set.
  std::optional<double> t_final;
  /// Horizon in units of the collision / transport time.
  std::optional<double> horizon_tc;
  std::size_t save_intervals = 200;

  // [initial]
  double sigma = 0.5;
  std::optional<double> k_kick;
  int ell = 1;

  // [barrier]
  /// Unset means "calibrate to target_reflection".
  std::optional<double> barrier_amplitude;
  std::optional<double> barrier_width;
  double barrier_center = 0.0;
  std::optional<double> barrier_on_time;
  double target_reflection = 0.5;

  // [trap]
  double trap_omega = 1.0;
  std::optional<double> transport_period;

  // [fisher]
  double omega0 = 0.0;
  /// Finite-difference step in units of hbar / (m R^2).
  double delta = 1e-3;
  unsigned threads = 5;

  /// Published parameter set for `id`.
  static SchemeConfig defaults(SchemeId id);

  double resolved_radius() const;
  double resolved_k_kick() const;
  /// Classical collision time pi R / k_kick (free-packet schemes) or the
  /// transport period (trap schemes); zero for schemes without one.
  double characteristic_time() const;
  double resolved_t_final() const;
  /// delta / R^2, the absolute Omega step.
  double resolved_delta() const;
  double resolved_barrier_width() const;
  double resolved_barrier_on_time() const;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Sets one `section.key` value from text. Throws ConfigError on unknown keys
/// or unparsable values.
void apply_override(SchemeConfig& config, const std::string& key,
                    const std::string& value);

/// Reads a TOML-style file: `[section]` headers, `key = value` lines, `#` or
/// `;` comments. `scheme.id` selects the defaults the other keys override.
SchemeConfig load_scheme_config(const std::filesystem::path& path);
SchemeConfig parse_scheme_config(const std::string& text);

/// Every resolved parameter as (section.key, value) pairs, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const SchemeConfig& config);

}  // namespace ringgyro
