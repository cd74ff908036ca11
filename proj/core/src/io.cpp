#include "ringgyro/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ringgyro/errors.hpp"

namespace ringgyro::io {
namespace {

constexpr const char* kFisherHeader =
    "time,f_q,f_c,f_lr,f_spin,analytic_f_q,f_s_reference";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, const std::filesystem::path& path,
                  std::size_t row) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw std::runtime_error(path.string() + ": row " + std::to_string(row) +
                             ": bad number '" + cell + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_fisher_csv(const std::filesystem::path& path, const FisherSeries& series) {
  auto out = open_out(path);
  out << kFisherHeader << '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << format_number(series.times[i]) << ',' << format_number(series.f_q[i])
        << ',' << format_number(series.f_c[i]) << ',';
    if (series.f_lr) out << format_number((*series.f_lr)[i]);
    out << ',';
    if (series.f_spin) out << format_number((*series.f_spin)[i]);
    out << ',';
    if (series.analytic_f_q) out << format_number((*series.analytic_f_q)[i]);
    out << ',' << format_number(series.f_s_reference) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

FisherSeries read_fisher_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != kFisherHeader) {
    throw std::runtime_error(path.string() + ": unexpected header");
  }
  FisherSeries series;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != 7) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(rows.size() + 1) +
                               " has " + std::to_string(cells.size()) + " columns");
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::runtime_error(path.string() + ": no data rows");

  // Optional columns must be all present or all empty.
  auto column_present = [&](std::size_t col) {
    const bool first = !rows.front()[col].empty();
    for (const auto& r : rows) {
      if (r[col].empty() == first) {
        throw std::runtime_error(path.string() + ": column " + std::to_string(col) +
                                 " is partially empty");
      }
    }
    return first;
  };
  const bool has_lr = column_present(3);
  const bool has_spin = column_present(4);
  const bool has_analytic = column_present(5);
  if (has_lr) series.f_lr.emplace();
  if (has_spin) series.f_spin.emplace();
  if (has_analytic) series.analytic_f_q.emplace();

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::size_t row = i + 1;
    series.times.push_back(parse_cell(r[0], path, row));
    series.f_q.push_back(parse_cell(r[1], path, row));
    series.f_c.push_back(parse_cell(r[2], path, row));
    if (has_lr) series.f_lr->push_back(parse_cell(r[3], path, row));
    if (has_spin) series.f_spin->push_back(parse_cell(r[4], path, row));
    if (has_analytic) series.analytic_f_q->push_back(parse_cell(r[5], path, row));
    series.f_s_reference = parse_cell(r[6], path, row);
    if (i > 0 && !(series.times[i] > series.times[i - 1])) {
      throw std::runtime_error(path.string() + ": times are not increasing");
    }
  }
  return series;
}

void write_field_csv(const std::filesystem::path& path, std::span<const double> theta,
                     const FieldMap& map) {
  auto out = open_out(path);
  out << "theta";
  for (double th : theta) out << ',' << format_number(th);
  out << '\n';
  for (std::size_t i = 0; i < map.rows.size(); ++i) {
    if (map.rows[i].size() != theta.size()) {
      throw std::invalid_argument("field map row length does not match theta");
    }
    out << format_number(map.times[i]);
    for (double v : map.rows[i]) out << ',' << format_number(v);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

FieldCsv read_field_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  auto head = split_csv(line);
  if (head.empty() || head[0] != "theta") {
    throw std::runtime_error(path.string() + ": first row must start with 'theta'");
  }
  FieldCsv result;
  for (std::size_t j = 1; j < head.size(); ++j) {
    result.theta.push_back(parse_cell(head[j], path, 0));
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    auto cells = split_csv(line);
    if (cells.size() != head.size()) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(row) +
                               " has the wrong number of columns");
    }
    result.map.times.push_back(parse_cell(cells[0], path, row));
    std::vector<double> values(cells.size() - 1);
    for (std::size_t j = 1; j < cells.size(); ++j) values[j - 1] = parse_cell(cells[j], path, row);
    result.map.rows.push_back(std::move(values));
  }
  return result;
}

void write_state_file(const std::filesystem::path& path, const Wavefunction& psi) {
  auto out = open_out(path);
  out << "# ringgyro-state v1\n";
  out << "n_points " << psi.size() << '\n';
  out << "radius " << format_number(psi.grid().radius()) << '\n';
  for (const auto& a : psi.amps()) {
    out << format_number(a.real()) << ' ' << format_number(a.imag()) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Wavefunction read_state_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string magic, key_n, key_r;
  std::getline(in, magic);
  if (magic != "# ringgyro-state v1") {
    throw std::runtime_error(path.string() + ": not a ringgyro state file");
  }
  std::size_t n = 0;
  double radius = 0.0;
  if (!(in >> key_n >> n) || key_n != "n_points" || !(in >> key_r >> radius) ||
      key_r != "radius") {
    throw std::runtime_error(path.string() + ": malformed state header");
  }
  auto grid = make_grid(n, radius);
  std::vector<cplx> amps(n);
  for (std::size_t j = 0; j < n; ++j) {
    double re = 0.0, im = 0.0;
    if (!(in >> re >> im)) {
      throw std::runtime_error(path.string() + ": expected " + std::to_string(n) +
                               " amplitude rows");
    }
    amps[j] = {re, im};
  }
  return Wavefunction(std::move(grid), std::move(amps));
}

}  // namespace ringgyro::io
