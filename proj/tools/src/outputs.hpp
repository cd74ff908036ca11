#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ringgyro/scheme_config.hpp"
#include "ringgyro/schemes.hpp"

namespace ringgyro::cli {

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Writes fisher.csv, density.csv, ddensity.csv and, for spinor results,
/// jz.csv and djz.csv. Returns the file names in write order.
std::vector<std::string> write_result_files(const std::filesystem::path& dir,
                                            const SchemeResult& result);

/// Re-reads every file written by write_result_files and checks it against
/// the in-memory result. Returns the problems found; schema errors throw.
std::vector<std::string> validate_result_files(const std::filesystem::path& dir,
                                               const SchemeResult& result);

struct ManifestInfo {
  double wall_seconds = 0.0;
  std::vector<std::string> files;
  std::vector<std::string> diagnostics;
};

/// Writes manifest.json. Must be called after every listed file exists.
void write_manifest(const std::filesystem::path& dir, const SchemeConfig& config,
                    const SchemeResult& result, const ManifestInfo& info);

}  // namespace ringgyro::cli
