#include "ringgyro/scheme_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ringgyro/errors.hpp"

namespace ringgyro {
namespace {

constexpr std::array<std::pair<SchemeId, std::string_view>, 7> kSchemeNames{{
    {SchemeId::kandes_free, "kandes_free"},
    {SchemeId::kandes_interacting, "kandes_interacting"},
    {SchemeId::helm_barrier, "helm_barrier"},
    {SchemeId::halkyard_oam, "halkyard_oam"},
    {SchemeId::halkyard_two_spin, "halkyard_two_spin"},
    {SchemeId::stevenson_const_velocity, "stevenson_const_velocity"},
    {SchemeId::stevenson_sinusoidal, "stevenson_sinusoidal"},
}};

bool is_stevenson(SchemeId id) {
  return id == SchemeId::stevenson_const_velocity ||
         id == SchemeId::stevenson_sinusoidal;
}

bool is_halkyard(SchemeId id) {
  return id == SchemeId::halkyard_oam || id == SchemeId::halkyard_two_spin;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
  return out;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  const long long v = parse_integer(key, text);
  if (v <= 0) throw ConfigError("config key '" + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

std::string_view to_string(SchemeId id) {
  for (const auto& [k, name] : kSchemeNames) {
    if (k == id) return name;
  }
  return "unknown";
}

SchemeId parse_scheme_id(std::string_view name) {
  for (const auto& [k, n] : kSchemeNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown scheme id '" + std::string(name) + "'");
}

const std::vector<SchemeId>& all_schemes() {
  static const std::vector<SchemeId> ids = [] {
    std::vector<SchemeId> v;
    for (const auto& [k, _] : kSchemeNames) v.push_back(k);
    return v;
  }();
  return ids;
}

bool is_spinor_scheme(SchemeId id) {
  return id == SchemeId::halkyard_two_spin || is_stevenson(id);
}

SchemeConfig SchemeConfig::defaults(SchemeId id) {
  SchemeConfig c;
  c.id = id;
  switch (id) {
    case SchemeId::kandes_free:
    case SchemeId::helm_barrier:
      c.horizon_tc = 3.0;
      break;
    case SchemeId::kandes_interacting:
      c.horizon_tc = 3.0;
      c.interaction_U = 0.2;
      break;
    case SchemeId::halkyard_oam:
    case SchemeId::halkyard_two_spin:
      c.n_points = 256;
      c.dt = 1e-3;
      c.t_final = 1.0;
      break;
    case SchemeId::stevenson_const_velocity:
    case SchemeId::stevenson_sinusoidal:
      c.n_points = 1024;
      c.dt = 1e-3;
      c.horizon_tc = 1.0;
      break;
  }
  return c;
}

double SchemeConfig::resolved_radius() const {
  if (radius) return *radius;
  // Trap schemes: R = 5 oscillator lengths.
  if (is_stevenson(id)) return 5.0 / std::sqrt(trap_omega);
  return 1.0;
}

double SchemeConfig::resolved_k_kick() const {
  return k_kick ? *k_kick : 20.0 / resolved_radius();
}

double SchemeConfig::characteristic_time() const {
  if (is_stevenson(id)) {
    return transport_period ? *transport_period : 5.0 / trap_omega;
  }
  if (is_halkyard(id)) return 0.0;
  return std::numbers::pi * resolved_radius() / resolved_k_kick();
}

double SchemeConfig::resolved_t_final() const {
  if (t_final) return *t_final;
  const double tc = characteristic_time();
  if (horizon_tc && tc > 0.0) return *horizon_tc * tc;
  throw ConfigError("scheme '" + std::string(to_string(id)) +
                    "' needs evolution.t_final");
}

double SchemeConfig::resolved_delta() const {
  const double r = resolved_radius();
  return delta / (r * r);
}

double SchemeConfig::resolved_barrier_width() const {
  return barrier_width ? *barrier_width
                       : 8.0 * 2.0 * std::numbers::pi / static_cast<double>(n_points);
}

double SchemeConfig::resolved_barrier_on_time() const {
  return barrier_on_time ? *barrier_on_time : characteristic_time();
}

void SchemeConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(what) + " must be positive");
    }
  };
  positive(resolved_radius(), "grid.radius");
  positive(dt, "evolution.dt");
  positive(resolved_t_final(), "evolution.t_final");
  positive(sigma, "initial.sigma");
  positive(delta, "fisher.delta");
  if (!std::isfinite(interaction_U)) throw ConfigError("evolution.interaction_U must be finite");
  if (!std::isfinite(omega0)) throw ConfigError("fisher.omega0 must be finite");
  if (save_intervals == 0 || save_intervals > 100000) {
    throw ConfigError("evolution.save_intervals must lie in [1, 100000]");
  }
  if (static_cast<double>(save_intervals + 1) * static_cast<double>(n_points) > 5e7) {
    throw ConfigError("output maps would exceed 5e7 values; reduce save_intervals or n_points");
  }
  if (threads == 0) throw ConfigError("fisher.threads must be >= 1");
  if (id == SchemeId::helm_barrier || id == SchemeId::kandes_free ||
      id == SchemeId::kandes_interacting) {
    positive(resolved_k_kick(), "initial.k_kick");
  }
  if (id == SchemeId::helm_barrier) {
    if (!(target_reflection > 0.0 && target_reflection < 1.0)) {
      throw ConfigError("barrier.target_reflection must lie in (0, 1)");
    }
    positive(resolved_barrier_width(), "barrier.width");
  }
  if (is_stevenson(id)) {
    positive(trap_omega, "trap.omega");
    positive(characteristic_time(), "trap.transport_period");
  }
}

void apply_override(SchemeConfig& c, const std::string& key, const std::string& value) {
  if (key == "scheme.id") {
    if (parse_scheme_id(trim(value)) != c.id) {
      throw ConfigError("scheme.id cannot be changed by an override");
    }
  } else if (key == "grid.n_points") {
    c.n_points = parse_count(key, value);
  } else if (key == "grid.radius") {
    c.radius = parse_double(key, value);
  } else if (key == "evolution.interaction_U") {
    c.interaction_U = parse_double(key, value);
  } else if (key == "evolution.dt") {
    c.dt = parse_double(key, value);
  } else if (key == "evolution.t_final") {
    c.t_final = parse_double(key, value);
  } else if (key == "evolution.horizon_tc") {
    c.horizon_tc = parse_double(key, value);
    c.t_final.reset();
  } else if (key == "evolution.save_intervals") {
    c.save_intervals = parse_count(key, value);
  } else if (key == "initial.sigma") {
    c.sigma = parse_double(key, value);
  } else if (key == "initial.k_kick") {
    c.k_kick = parse_double(key, value);
  } else if (key == "initial.ell") {
    c.ell = static_cast<int>(parse_integer(key, value));
  } else if (key == "barrier.amplitude") {
    c.barrier_amplitude = parse_double(key, value);
  } else if (key == "barrier.width") {
    c.barrier_width = parse_double(key, value);
  } else if (key == "barrier.center") {
    c.barrier_center = parse_double(key, value);
  } else if (key == "barrier.on_time") {
    c.barrier_on_time = parse_double(key, value);
  } else if (key == "barrier.target_reflection") {
    c.target_reflection = parse_double(key, value);
  } else if (key == "trap.omega") {
    c.trap_omega = parse_double(key, value);
  } else if (key == "trap.transport_period") {
    c.transport_period = parse_double(key, value);
  } else if (key == "fisher.omega0") {
    c.omega0 = parse_double(key, value);
  } else if (key == "fisher.delta") {
    c.delta = parse_double(key, value);
  } else if (key == "fisher.threads") {
    c.threads = static_cast<unsigned>(parse_count(key, value));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

SchemeConfig parse_scheme_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  const auto id_node = tree.get_optional<std::string>("scheme.id");
  if (!id_node) throw ConfigError("config is missing [scheme] id");
  SchemeConfig config = SchemeConfig::defaults(parse_scheme_id(trim(*id_node)));

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("config key '" + section + "' must live inside a [section]");
    }
    for (const auto& [key, leaf] : body) {
      apply_override(config, section + "." + key, leaf.data());
    }
  }
  config.validate();
  return config;
}

SchemeConfig load_scheme_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scheme_config(buffer.str());
}

std::vector<std::pair<std::string, std::string>> describe(const SchemeConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const char* key, const std::string& v) { out.emplace_back(key, v); };
  add("scheme.id", std::string(to_string(c.id)));
  add("grid.n_points", std::to_string(c.n_points));
  add("grid.radius", format_double(c.resolved_radius()));
  add("evolution.interaction_U", format_double(c.interaction_U));
  add("evolution.dt", format_double(c.dt));
  add("evolution.t_final", format_double(c.resolved_t_final()));
  add("evolution.save_intervals", std::to_string(c.save_intervals));
  add("initial.sigma", format_double(c.sigma));
  add("initial.k_kick", format_double(c.resolved_k_kick()));
  add("initial.ell", std::to_string(c.ell));
  add("barrier.amplitude", c.barrier_amplitude ? format_double(*c.barrier_amplitude) : "calibrate");
  add("barrier.width", format_double(c.resolved_barrier_width()));
  add("barrier.center", format_double(c.barrier_center));
  add("barrier.on_time", format_double(c.resolved_barrier_on_time()));
  add("barrier.target_reflection", format_double(c.target_reflection));
  add("trap.omega", format_double(c.trap_omega));
  add("trap.transport_period", format_double(c.characteristic_time()));
  add("fisher.omega0", format_double(c.omega0));
  add("fisher.delta", format_double(c.delta));
  add("fisher.threads", std::to_string(c.threads));
  return out;
}

}  // namespace ringgyro
