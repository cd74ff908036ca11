#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ringgyro::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kNotConverged = 3,
};

struct RunRequest {
  std::filesystem::path config;
  std::filesystem::path out_dir;
  std::optional<double> omega;
  /// Same units as fisher.delta (hbar / m R^2).
  std::optional<double> delta;
  std::optional<unsigned> threads;
  /// `section.key`, value pairs applied after the file is read.
  std::vector<std::pair<std::string, std::string>> overrides;
};

int cmd_run(const RunRequest& request, std::ostream& out, std::ostream& err);
int cmd_calibrate_barrier(const std::filesystem::path& config,
                          const std::vector<std::pair<std::string, std::string>>& overrides,
                          std::ostream& out, std::ostream& err);
int cmd_ground_state(const std::filesystem::path& config, const std::filesystem::path& state_out,
                     const std::vector<std::pair<std::string, std::string>>& overrides,
                     std::ostream& out, std::ostream& err);
/// Runs `base` once per value of `param`, into out_root/<param>_<value>.
/// Returns the first non-zero exit code, or 0.
int cmd_sweep(const RunRequest& base, const std::string& param,
              const std::vector<std::string>& values,
              const std::filesystem::path& out_root, std::ostream& out, std::ostream& err);

/// Keeps [A-Za-z0-9.+-], maps everything else to '_'.
std::string sanitize_component(const std::string& text);

}  // namespace ringgyro::cli
