#pragma once

// Plain-text density matrix files:
//
//   qstate v1
//   dims: 2 2
//   <row 0 entries>
//   ...
//
// One matrix row per line, entries space-separated as `re+imj` (or `re-imj`),
// each component in scientific notation with 17 significant digits. Lines end
// in LF. Loading re-validates every density matrix invariant.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qdiss/qla.hpp"

namespace qdiss::io {

inline constexpr std::string_view kStateFileHeader = "qstate v1";

std::string format_real(double x);  // 17 significant digits, scientific
std::string format_complex(qla::Complex c);
qla::Complex parse_complex(std::string_view token);

void write_state(std::ostream& out, const qla::DensityMatrix& rho);
std::string to_state_text(const qla::DensityMatrix& rho);
qla::DensityMatrix read_state(std::istream& in);

// Throw IoError on file-system failures and DomainError on malformed content.
void save_state(const std::filesystem::path& path, const qla::DensityMatrix& rho);
qla::DensityMatrix load_state(const std::filesystem::path& path);

}  // namespace qdiss::io
