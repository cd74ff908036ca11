#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ringgyro/fisher.hpp"
#include "ringgyro/schemes.hpp"
#include "ringgyro/wavefunction.hpp"

namespace ringgyro::io {

/// Decimal with 17 significant digits; round-trips every double.
std::string format_number(double v);

/// Columns: time,f_q,f_c,f_lr,f_spin,analytic_f_q,f_s_reference. Estimators a
/// scheme does not produce are left empty.
void write_fisher_csv(const std::filesystem::path& path, const FisherSeries& series);
/// Throws std::runtime_error on schema violations.
FisherSeries read_fisher_csv(const std::filesystem::path& path);

/// First row: "theta" followed by the grid angles. Every further row: the
/// time followed by one value per angle.
void write_field_csv(const std::filesystem::path& path, std::span<const double> theta,
                     const FieldMap& map);

struct FieldCsv {
  std::vector<double> theta;
  FieldMap map;
};
FieldCsv read_field_csv(const std::filesystem::path& path);

/// Header lines "# ringgyro-state v1", "n_points N", "radius R", then N lines
/// "real imag".
void write_state_file(const std::filesystem::path& path, const Wavefunction& psi);
Wavefunction read_state_file(const std::filesystem::path& path);

}  // namespace ringgyro::io
