#include "qdiss/state_file.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qdiss::io {

namespace {

double parse_double(std::string_view s, std::string_view token) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("malformed number in entry '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string format_real(double x) {
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific, 16);
  return std::string(buf.data(), ptr);
}

std::string format_complex(qla::Complex c) {
  std::string im = format_real(c.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_real(c.real()) + im + "j";
}

qla::Complex parse_complex(std::string_view token) {
  if (token.size() < 2 || token.back() != 'j') throw DomainError("malformed entry '" + std::string(token) + "' (expected re+imj)");
  const std::string_view body = token.substr(0, token.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      return {parse_double(body.substr(0, i), token), parse_double(body.substr(i), token)};
    }
  }
  throw DomainError("malformed entry '" + std::string(token) + "' (missing imaginary part)");
}

void write_state(std::ostream& out, const qla::DensityMatrix& rho) {
  out << kStateFileHeader << '\n' << "dims:";
  for (std::size_t d : rho.legs()) out << ' ' << d;
  out << '\n';
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_complex(m(i, j));
    }
    out << '\n';
  }
}

std::string to_state_text(const qla::DensityMatrix& rho) {
  std::ostringstream s;
  write_state(s, rho);
  return s.str();
}

qla::DensityMatrix read_state(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty state file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kStateFileHeader) throw DomainError("not a state file (expected header '" + std::string(kStateFileHeader) + "')");

  if (!std::getline(in, line) || line.rfind("dims:", 0) != 0) throw DomainError("missing 'dims:' line");
  qla::Legs legs;
  for (auto tok : split_ws(std::string_view(line).substr(5))) {
    std::size_t d = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || d == 0) {
      throw DomainError("bad dimension '" + std::string(tok) + "'");
    }
    legs.push_back(d);
  }
  if (legs.empty()) throw DomainError("'dims:' line lists no dimensions");
  const std::size_t n = qla::leg_product(legs);
  if (n > 64) throw DomainError("state dimension " + std::to_string(n) + " exceeds 64");

  qla::ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DomainError("state file ends after " + std::to_string(i) + " of " + std::to_string(n) + " rows");
    const auto tokens = split_ws(line);
    if (tokens.size() != n) {
      throw DomainError("row " + std::to_string(i) + " has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_complex(tokens[j]);
  }
  while (std::getline(in, line)) {
    if (!split_ws(line).empty()) throw DomainError("trailing content after the matrix rows");
  }
  return qla::DensityMatrix(std::move(m), std::move(legs));
}

void save_state(const std::filesystem::path& path, const qla::DensityMatrix& rho) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  write_state(f, rho);
  if (!f.flush()) throw IoError("failed writing '" + path.string() + "'");
}

qla::DensityMatrix load_state(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return read_state(f);
}

}  // namespace qdiss::io
