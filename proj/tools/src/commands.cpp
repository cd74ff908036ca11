#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "outputs.hpp"
#include "ringgyro/barrier.hpp"
#include "ringgyro/errors.hpp"
#include "ringgyro/ground_state.hpp"
#include "ringgyro/io.hpp"
#include "ringgyro/scheme_config.hpp"
#include "ringgyro/schemes.hpp"

namespace ringgyro::cli {
namespace fs = std::filesystem;

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

SchemeConfig load_with_overrides(const fs::path& path, const Overrides& overrides) {
  SchemeConfig config = load_scheme_config(path);
  for (const auto& [key, value] : overrides) {
    if (key == "scheme.id") throw ConfigError("scheme.id cannot be overridden");
    apply_override(config, key, value);
  }
  config.validate();
  return config;
}

std::string number(double v) { return io::format_number(v); }

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConvergenceError& e) {
    err << "not converged: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

std::string sanitize_component(const std::string& text) {
  std::string s;
  for (char ch : text) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '.' || ch == '-' || ch == '+';
    s.push_back(keep ? ch : '_');
  }
  if (s.empty() || s == "." || s == "..") s = "_" + s;
  return s;
}

int cmd_run(const RunRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    Overrides overrides = request.overrides;
    if (request.omega) overrides.emplace_back("fisher.omega0", number(*request.omega));
    if (request.delta) overrides.emplace_back("fisher.delta", number(*request.delta));
    if (request.threads) overrides.emplace_back("fisher.threads", std::to_string(*request.threads));
    const SchemeConfig config = load_with_overrides(request.config, overrides);
    const SchemePlan plan = build_scheme(config);

    const SchemeResult result = run_scheme(plan);

    fs::create_directories(request.out_dir);
    ManifestInfo info;
    info.files = write_result_files(request.out_dir, result);
    info.diagnostics = result.diagnostics;
    for (auto& p : validate_result_files(request.out_dir, result)) {
      info.diagnostics.push_back(std::move(p));
    }
    info.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(request.out_dir, config, result, info);

    out << to_string(config.id) << ": " << result.series.times.size() << " snapshots, delta "
        << result.delta_used << ", wall " << std::fixed << std::setprecision(2)
        << info.wall_seconds << " s\n";
    out.unsetf(std::ios::floatfield);
    if (result.barrier_amplitude) {
      out << "barrier amplitude " << number(*result.barrier_amplitude) << '\n';
    }
    if (!info.diagnostics.empty()) {
      for (const auto& d : info.diagnostics) err << "degraded: " << d << '\n';
      return static_cast<int>(kNotConverged);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_calibrate_barrier(const fs::path& config_path, const Overrides& overrides,
                          std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SchemeConfig config = load_with_overrides(config_path, overrides);
    const SchemePlan plan = build_scheme(config);
    BarrierProbe probe{config.resolved_barrier_width(), config.sigma, plan.params.dt};
    const auto cal = calibrate_barrier(config.resolved_k_kick(), plan.grid, probe,
                                       config.target_reflection);
    out << "amplitude = " << number(cal.amplitude) << '\n'
        << "reflection = " << number(cal.reflection) << '\n'
        << "evaluations = " << cal.evaluations << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_ground_state(const fs::path& config_path, const fs::path& state_out,
                     const Overrides& overrides, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SchemeConfig config = load_with_overrides(config_path, overrides);
    const auto grid = make_grid(config.n_points, config.resolved_radius());
    const auto pot = PotentialSpec::harmonic(config.trap_omega);
    const auto gs = ground_state(pot, config.interaction_U, grid);
    if (state_out.has_parent_path()) fs::create_directories(state_out.parent_path());
    io::write_state_file(state_out, gs.state);
    out << "energy = " << number(gs.energy) << '\n' << "steps = " << gs.steps << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const RunRequest& base, const std::string& param,
              const std::vector<std::string>& values, const fs::path& out_root,
              std::ostream& out, std::ostream& err) {
  if (values.empty()) {
    err << "config error: sweep needs at least one value\n";
    return kConfigError;
  }
  // Reject bad keys or values before any run writes output.
  for (const auto& v : values) {
    Overrides o = base.overrides;
    o.emplace_back(param, v);
    const int code = guarded(err, [&] {
      build_scheme(load_with_overrides(base.config, o));
      return static_cast<int>(kOk);
    });
    if (code != kOk) return code;
  }
  int worst = kOk;
  for (const auto& v : values) {
    RunRequest r = base;
    r.overrides.emplace_back(param, v);
    r.out_dir = out_root / (sanitize_component(param) + "_" + sanitize_component(v));
    out << "[" << param << " = " << v << "] -> " << r.out_dir.string() << '\n';
    const int code = cmd_run(r, out, err);
    if (worst == kOk) worst = code;
  }
  return worst;
}

}  // namespace ringgyro::cli
