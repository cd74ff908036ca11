#include "outputs.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ringgyro/io.hpp"

#ifndef RINGGYRO_VERSION
#define RINGGYRO_VERSION "unknown"
#endif

namespace ringgyro::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 init failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

std::vector<std::string> write_result_files(const fs::path& dir, const SchemeResult& result) {
  std::vector<std::string> files;
  auto field = [&](const char* name, const FieldMap& map) {
    io::write_field_csv(dir / name, result.theta, map);
    files.emplace_back(name);
  };
  io::write_fisher_csv(dir / "fisher.csv", result.series);
  files.emplace_back("fisher.csv");
  field("density.csv", result.density);
  field("ddensity.csv", result.ddensity);
  if (result.jz) field("jz.csv", *result.jz);
  if (result.djz) field("djz.csv", *result.djz);
  return files;
}

namespace {

void compare_field(const fs::path& path, const SchemeResult& result, const FieldMap& map,
                   std::vector<std::string>& problems) {
  const auto back = io::read_field_csv(path);
  const std::string name = path.filename().string();
  if (back.theta != result.theta) problems.push_back(name + ": theta row differs");
  if (back.map.times != map.times || back.map.rows != map.rows) {
    problems.push_back(name + ": values differ after round trip");
  }
}

}  // namespace

std::vector<std::string> validate_result_files(const fs::path& dir, const SchemeResult& result) {
  std::vector<std::string> problems;
  const auto series = io::read_fisher_csv(dir / "fisher.csv");
  const auto& s = result.series;
  if (series.times != s.times || series.f_q != s.f_q || series.f_c != s.f_c ||
      series.f_lr != s.f_lr || series.f_spin != s.f_spin ||
      series.analytic_f_q != s.analytic_f_q) {
    problems.emplace_back("fisher.csv: values differ after round trip");
  }
  for (auto& v : series.invariant_violations()) problems.push_back("fisher.csv: " + v);
  compare_field(dir / "density.csv", result, result.density, problems);
  compare_field(dir / "ddensity.csv", result, result.ddensity, problems);
  if (result.jz) compare_field(dir / "jz.csv", result, *result.jz, problems);
  if (result.djz) compare_field(dir / "djz.csv", result, *result.djz, problems);
  for (const auto& t : result.density.times) {
    if (!std::isfinite(t)) problems.emplace_back("non-finite save time");
  }
  return problems;
}

void write_manifest(const fs::path& dir, const SchemeConfig& config,
                    const SchemeResult& result, const ManifestInfo& info) {
  json m;
  m["version"] = RINGGYRO_VERSION;
  m["scheme"] = std::string(to_string(result.id));
  json cfg = json::object();
  for (const auto& [key, value] : describe(config)) cfg[key] = value;
  m["config"] = cfg;
  m["wall_seconds"] = info.wall_seconds;
  m["derivative"] = {
      {"delta", result.delta_used},
      {"converged", result.derivative_converged},
      {"max_richardson_residual",
       result.richardson_residual.empty()
           ? 0.0
           : *std::max_element(result.richardson_residual.begin(),
                               result.richardson_residual.end())},
      {"richardson_residual", result.richardson_residual},
  };
  m["max_norm_drift"] = result.max_norm_drift;
  m["barrier_amplitude"] = result.barrier_amplitude ? json(*result.barrier_amplitude) : json();
  m["barrier_reflection"] = result.barrier_reflection ? json(*result.barrier_reflection) : json();
  m["ground_state_energy"] =
      result.ground_state_energy ? json(*result.ground_state_energy) : json();
  m["degraded"] = !info.diagnostics.empty();
  m["diagnostics"] = info.diagnostics;
  json files = json::array();
  for (const auto& name : info.files) {
    files.push_back({{"name", name}, {"sha256", sha256_file(dir / name)}});
  }
  m["files"] = files;

  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << m.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for manifest.json");
}

}  // namespace ringgyro::cli
