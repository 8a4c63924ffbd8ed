#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdiss/correlations.hpp"

namespace qdiss::io {

struct SweepRow {
  double z = 0.0;
  double total = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  double geometric_discord = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
  std::size_t rank_L = 0;
};

inline constexpr const char* kSweepHeader = "z,total,classical,discord,geometric_discord,concurrence,negativity,rank_L";

// Evenly spaced grid with both endpoints. Requires 0 <= zmin < zmax <= 1 and steps >= 2.
std::vector<double> sweep_grid(double zmin, double zmax, std::size_t steps);

SweepRow sweep_row(double z, const correlations::OptimizerOptions& opts = {});
std::vector<SweepRow> sweep(double zmin, double zmax, std::size_t steps, const correlations::OptimizerOptions& opts = {});

// Shortest round-trip decimal; magnitudes below 1e-14 print as 0.
std::string format_csv_value(double x);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void save_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

}  // namespace qdiss::io
