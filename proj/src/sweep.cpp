#include "qdiss/sweep.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "qdiss/states.hpp"
#include "qdiss/witness.hpp"

namespace qdiss::io {

std::vector<double> sweep_grid(double zmin, double zmax, std::size_t steps) {
  if (!(zmin >= 0.0 && zmin < zmax && zmax <= 1.0)) {
    throw DomainError("sweep requires 0 <= zmin < zmax <= 1 (got zmin = " + std::to_string(zmin) +
                      ", zmax = " + std::to_string(zmax) + ")");
  }
  if (steps < 2) throw DomainError("sweep requires steps >= 2");
  std::vector<double> z(steps);
  const double n = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) z[i] = zmin + (zmax - zmin) * static_cast<double>(i) / n;
  z.back() = zmax;
  return z;
}

SweepRow sweep_row(double z, const correlations::OptimizerOptions& opts) {
  const auto rho = states::werner(z);
  const auto rep = correlations::discord(rho, opts);
  const auto wit = witness::analyze(rho);
  return SweepRow{z,
                  rep.total,
                  rep.classical,
                  rep.discord,
                  rep.geometric_discord.value_or(0.0),
                  rep.concurrence.value_or(0.0),
                  rep.negativity,
                  wit.rank};
}

std::vector<SweepRow> sweep(double zmin, double zmax, std::size_t steps, const correlations::OptimizerOptions& opts) {
  std::vector<SweepRow> rows;
  for (double z : sweep_grid(zmin, zmax, steps)) rows.push_back(sweep_row(z, opts));
  return rows;
}

std::string format_csv_value(double x) {
  if (std::abs(x) < 1e-14) x = 0.0;
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_csv_value(r.z) << ',' << format_csv_value(r.total) << ',' << format_csv_value(r.classical) << ','
        << format_csv_value(r.discord) << ',' << format_csv_value(r.geometric_discord) << ','
        << format_csv_value(r.concurrence) << ',' << format_csv_value(r.negativity) << ',' << r.rank_L << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(f, rows);
  if (!f.flush()) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace qdiss::io
