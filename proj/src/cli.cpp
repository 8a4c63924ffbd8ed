#include "qdiss/cli.hpp"

#include <CLI11.hpp>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "qdiss/correlations.hpp"
#include "qdiss/protocols.hpp"
#include "qdiss/state_file.hpp"
#include "qdiss/states.hpp"
#include "qdiss/sweep.hpp"
#include "qdiss/witness.hpp"

namespace qdiss::cli {

namespace {

namespace fs = std::filesystem;
using qla::DensityMatrix;

std::string fixed(double x, int digits = 6) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, digits);
  std::string s(buf.data(), ptr);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string general(double x, int digits = 10) {
  if (x == 0.0) x = 0.0;
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, digits);
  return std::string(buf.data(), ptr);
}

std::string complex_text(qla::Complex c) {
  std::string im = general(c.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return general(c.real()) + im + "j";
}

std::string bool_text(bool b) { return b ? "TRUE" : "FALSE"; }

std::vector<double> parse_list(const std::string& text, std::string_view what) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == ';')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && text[j] != ' ' && text[j] != ';') ++j;
    if (j > i) {
      double v = 0.0;
      const char* first = text.data() + i;
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, text.data() + j, v);
      if (ec != std::errc() || ptr != text.data() + j) {
        throw DomainError("--" + std::string(what) + ": '" + text.substr(i, j - i) + "' is not a number");
      }
      out.push_back(v);
    }
    i = j;
  }
  return out;
}

// Accepts a decimal or a fraction such as 1/3.
double parse_z(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    const auto v = parse_list(text, "z");
    if (v.size() != 1) throw DomainError("--z expects a single number");
    return v[0];
  }
  const auto num = parse_list(text.substr(0, slash), "z");
  const auto den = parse_list(text.substr(slash + 1), "z");
  if (num.size() != 1 || den.size() != 1 || den[0] == 0.0) throw DomainError("--z: malformed fraction '" + text + "'");
  return num[0] / den[0];
}

std::vector<qla::PureState> qubit_basis_from(const std::string& angles, std::size_t d, std::string_view what) {
  if (angles.empty()) return states::computational_basis(d);
  if (d != 2) throw DomainError("--" + std::string(what) + " applies to qubit subsystems only");
  const auto a = parse_list(angles, what);
  if (a.size() != 2) throw DomainError("--" + std::string(what) + " expects two angles: theta,phi");
  return states::qubit_basis(a[0], a[1]);
}

// Files that cannot be read or parsed map to the I/O exit code.
DensityMatrix load(const std::string& path) {
  try {
    return io::load_state(path);
  } catch (const DomainError& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

DensityMatrix as_bipartite(const DensityMatrix& rho) {
  if (rho.legs().size() == 2) return rho;
  if (rho.legs().size() < 2) throw DomainError("state has a single leg; a bipartite state is required");
  return qla::bipartition(rho, rho.legs().size() / 2);
}

struct Globals {
  double tol = protocols::kEndToEndTol;
  std::size_t opt_grid = correlations::OptimizerOptions{}.grid_theta;
  std::size_t opt_refine = correlations::OptimizerOptions{}.refine_starts;

  correlations::OptimizerOptions optimizer() const {
    correlations::OptimizerOptions o;
    o.grid_theta = opt_grid;
    o.grid_phi = 2 * opt_grid;
    o.refine_starts = opt_refine;
    return o;
  }
};

void print_spectrum(std::ostream& os, const DensityMatrix& rho) {
  const auto ev = qla::eigenvalues(rho.matrix());
  os << "eigenvalues=";
  for (std::size_t i = 0; i < ev.size(); ++i) os << (i ? "," : "") << general(ev[i]);
  os << "\ntrace=" << general(rho.matrix().trace().real()) << '\n';
}

// ---- state ----

struct StateArgs {
  std::string kind;
  std::string z = "0";
  std::string p;
  std::string dims;
  std::string basis_a;
  std::string basis_b;
  std::string bloch;
  std::string which = "psi-";
  std::size_t k = 2;
  std::string output;
};

DensityMatrix build_state(const StateArgs& a) {
  if (a.kind == "werner") return states::werner(parse_z(a.z));
  if (a.kind == "bell") return states::bell(states::parse_bell(a.which)).density();
  if (a.kind == "cc-pairs") return states::cc_pairs(a.k);
  if (a.kind == "cc") {
    const auto p = parse_list(a.p, "p");
    std::size_t da = 2, db = 2;
    if (!a.dims.empty()) {
      const auto d = parse_list(a.dims, "dims");
      if (d.size() != 2 || d[0] < 1 || d[1] < 1 || d[0] != std::floor(d[0]) || d[1] != std::floor(d[1])) {
        throw DomainError("--dims expects two positive integers dA,dB");
      }
      da = static_cast<std::size_t>(d[0]);
      db = static_cast<std::size_t>(d[1]);
    }
    if (p.size() != da * db) {
      throw DomainError("--p has " + std::to_string(p.size()) + " entries, expected dA*dB = " + std::to_string(da * db));
    }
    std::vector<std::vector<double>> table(da, std::vector<double>(db));
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < db; ++j) table[i][j] = p[i * db + j];
    }
    return states::cc_state(table, qubit_basis_from(a.basis_a, da, "basis-a"), qubit_basis_from(a.basis_b, db, "basis-b"));
  }
  if (a.kind == "cq") {
    const auto p = parse_list(a.p, "p");
    const auto b = parse_list(a.bloch, "bloch");
    if (p.empty()) throw DomainError("--p is required for cq");
    if (b.size() != 3 * p.size()) {
      throw DomainError("--bloch needs 3 components per branch (" + std::to_string(3 * p.size()) + " values)");
    }
    std::vector<DensityMatrix> rho_b;
    for (std::size_t i = 0; i < p.size(); ++i) rho_b.push_back(states::qubit_state(b[3 * i], b[3 * i + 1], b[3 * i + 2]));
    return states::cq_state(p, qubit_basis_from(a.basis_a, p.size(), "basis-a"), rho_b);
  }
  throw DomainError("unknown constructor '" + a.kind + "' (expected werner, cc, cq, bell or cc-pairs)");
}

int cmd_state(const StateArgs& a, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = build_state(a);
  if (a.output.empty()) {
    io::write_state(out, rho);
    print_spectrum(err, rho);
  } else {
    io::save_state(a.output, rho);
    out << "wrote=" << a.output << "\ndims=";
    for (std::size_t i = 0; i < rho.legs().size(); ++i) out << (i ? "," : "") << rho.legs()[i];
    out << '\n';
    print_spectrum(out, rho);
  }
  return kOk;
}

// ---- measures ----

int cmd_measures(const std::string& input, const std::string& json_path, const Globals& g, std::ostream& out) {
  const DensityMatrix rho = as_bipartite(load(input));
  nlohmann::ordered_json j;
  j["dims"] = rho.legs();
  j["total"] = correlations::total_correlation(rho);
  j["negativity"] = correlations::negativity(rho);
  if (rho.legs()[0] == 2) {
    const auto rep = correlations::discord(rho, g.optimizer());
    j["classical"] = rep.classical;
    j["discord"] = rep.discord;
    j["argmin_theta"] = rep.argmin_measurement.theta();
    j["argmin_phi"] = rep.argmin_measurement.phi();
    j["outcome_probs"] = rep.outcome_probs;
    if (rep.geometric_discord) j["geometric_discord"] = *rep.geometric_discord;
    if (rep.concurrence) j["concurrence"] = *rep.concurrence;
  }

  out << "dims=" << rho.legs()[0] << ',' << rho.legs()[1] << '\n';
  const auto line = [&](const char* key) {
    out << key << '=';
    if (j.contains(key)) {
      out << fixed(j[key].get<double>());
    } else {
      out << "n/a";
    }
    out << '\n';
  };
  line("total");
  line("classical");
  line("discord");
  line("geometric_discord");
  line("concurrence");
  line("negativity");
  line("argmin_theta");
  line("argmin_phi");

  if (!json_path.empty()) {
    std::ofstream f(json_path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + json_path + "' for writing");
    f << j.dump(2) << '\n';
    if (!f.flush()) throw IoError("failed writing '" + json_path + "'");
  }
  return kOk;
}

// ---- witness ----

int cmd_witness(const std::string& input, const std::string& side_name, std::ostream& out) {
  const DensityMatrix rho = as_bipartite(load(input));
  witness::Side side = witness::Side::A;
  if (side_name == "B" || side_name == "b") {
    side = witness::Side::B;
  } else if (side_name != "A" && side_name != "a") {
    throw DomainError("--side must be A or B");
  }
  const auto rep = witness::analyze(rho, side);
  out << "singular_values=";
  for (std::size_t i = 0; i < rep.singular_values.size(); ++i) out << (i ? "," : "") << general(rep.singular_values[i]);
  out << "\nL=" << rep.rank << '\n'
      << "side=" << (side == witness::Side::A ? "A" : "B") << '\n'
      << "rank_witness=" << bool_text(rep.rank_witness) << '\n'
      << "commutator_norm=" << general(rep.max_commutator_norm) << '\n'
      << "simultaneous_diag_residual=" << general(rep.simultaneous_diag_residual) << '\n'
      << "commutator_verdict=" << (rep.commutator_zero_discord ? "ZERO-DISCORD" : "NONZERO-DISCORD") << '\n';
  return kOk;
}

// ---- protocol ----

// Values within this distance of 1/3 are read as 1/3 itself (a decimal such as
// 0.3333333 cannot name the endpoint where the unitary protocol exists).
constexpr double kThirdSnap = 1e-6;

double protocol_z(const std::string& text, std::ostream& out) {
  double z = parse_z(text);
  if (std::abs(z - states::kSeparableBound) <= kThirdSnap && z != states::kSeparableBound) {
    out << "note=z " << text << " read as 1/3\n";
    z = states::kSeparableBound;
  }
  if (!(z >= 0.0 && z <= states::kSeparableBound)) {
    throw DomainError("protocol requires 0 <= z <= 1/3 (separable range); got z = " + general(z));
  }
  return z;
}

int cmd_protocol(const std::string& kind, const std::string& z_text, const std::string& dump_dir, const Globals& g,
                 std::ostream& out) {
  if (kind != "kraus" && kind != "unitary") throw DomainError("protocol kind must be kraus or unitary");
  const double z = protocol_z(z_text, out);
  const auto result = kind == "kraus" ? protocols::run_kraus_protocol(z, g.optimizer())
                                      : protocols::run_unitary_protocol(z, g.optimizer());
  const auto& c = result.certification;
  out << "protocol=" << kind << '\n'
      << "z=" << general(z) << '\n'
      << "trace_distance=" << general(result.trace_distance_to_target) << '\n'
      << "discord=" << fixed(c.discord()) << '\n'
      << "geometric_discord=" << fixed(c.geometric_discord(), 9) << '\n'
      << "concurrence=" << general(c.concurrence()) << '\n'
      << "negativity=" << general(c.negativity()) << '\n'
      << "L=" << c.rank() << '\n'
      << "rank_witness=" << bool_text(c.witness.rank_witness) << '\n';
  if (!dump_dir.empty()) {
    std::error_code ec;
    fs::create_directories(dump_dir, ec);
    if (ec) throw IoError("cannot create '" + dump_dir + "': " + ec.message());
    const fs::path dir(dump_dir);
    io::save_state(dir / "initial.qstate", result.initial);
    io::save_state(dir / "post_operation.qstate", result.post_operation);
    io::save_state(dir / "final.qstate", result.final_state);
    io::save_state(dir / "target.qstate", result.target);
    out << "dumped=" << dump_dir << '\n';
  }
  out << (result.passed(g.tol) ? "PASS" : "FAIL") << '\n';
  return result.passed(g.tol) ? kOk : kDomainError;
}

// ---- sweep ----

int cmd_sweep(double zmin, double zmax, std::size_t steps, const std::string& output, const Globals& g,
              std::ostream& out) {
  const auto rows = io::sweep(zmin, zmax, steps, g.optimizer());
  if (output.empty() || output == "-") {
    io::write_csv(out, rows);
  } else {
    io::save_csv(output, rows);
    out << "wrote=" << output << "\nrows=" << rows.size() << '\n';
  }
  return kOk;
}

// ---- decompose ----

void print_amplitudes(std::ostream& out, const qla::PureState& s) {
  for (std::size_t i = 0; i < s.dim(); ++i) out << (i ? "," : "") << complex_text(s[i]);
}

int cmd_decompose(const std::string& z_text, std::ostream& out) {
  const double z = parse_z(z_text);
  const auto dec = states::product_decomposition(z);
  out << "z=" << general(z) << "\ntheta=";
  for (std::size_t l = 0; l < 4; ++l) out << (l ? "," : "") << general(dec.phases.theta[l]);
  out << "\nphase_residual=" << general(dec.phases.residual(z)) << '\n';
  for (std::size_t j = 0; j < 4; ++j) {
    const auto& f = dec.factors[j];
    out << "eta" << j + 1 << '=';
    print_amplitudes(out, dec.etas[j]);
    out << "\npsi" << j + 1 << '=';
    print_amplitudes(out, f.first);
    out << "\nphi" << j + 1 << '=';
    print_amplitudes(out, f.second);
    out << "\nphase" << j + 1 << '=' << complex_text(f.phase) << "\nscale" << j + 1 << '=' << general(f.scale)
        << "\nresidual" << j + 1 << '=' << general(f.residual) << '\n';
  }
  out << "max_residual=" << general(dec.max_residual()) << '\n'
      << "reconstruction_error="
      << general(qla::max_abs_diff(dec.reconstruction(), states::werner(z).matrix())) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum discord toolkit: states, correlation measures, witnesses and dissonance protocols", "qdiss"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qdiss 1.0.0");

  Globals g;
  app.add_option("--tol", g.tol, "PASS threshold for protocol trace distance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--opt-grid", g.opt_grid, "discord optimizer theta grid size (phi grid is twice this)")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  app.add_option("--opt-refine", g.opt_refine, "Nelder-Mead restarts from the best grid points")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));

  StateArgs sa;
  auto* state = app.add_subcommand("state", "build a named state and write a state file");
  state->fallthrough();
  state->add_option("constructor", sa.kind, "werner | cc | cq | bell | cc-pairs")->required();
  state->add_option("--z", sa.z, "Werner weight");
  state->add_option("--p", sa.p, "probabilities, comma separated (cc: row-major dA x dB table; cq: one per branch)");
  state->add_option("--dims", sa.dims, "cc subsystem dimensions dA,dB (default 2,2)");
  state->add_option("--basis-a", sa.basis_a, "qubit basis angles theta,phi for A");
  state->add_option("--basis-b", sa.basis_b, "qubit basis angles theta,phi for B");
  state->add_option("--bloch", sa.bloch, "cq: Bloch vectors of the B states, x,y,z per branch");
  state->add_option("--which", sa.which, "Bell state: psi+ psi- phi+ phi-")->capture_default_str();
  state->add_option("--k", sa.k, "number of classically correlated pairs (2 or 3)")->capture_default_str();
  state->add_option("-o,--output", sa.output, "state file to write (stdout when omitted)");

  std::string input, json_path, side = "A";
  auto* measures = app.add_subcommand("measures", "correlation measures of a stored state");
  measures->fallthrough();
  measures->add_option("input", input, "state file")->required();
  measures->add_option("--json", json_path, "also write the report as JSON");

  auto* witness_cmd = app.add_subcommand("witness", "rank and commutator discord witnesses");
  witness_cmd->fallthrough();
  witness_cmd->add_option("input", input, "state file")->required();
  witness_cmd->add_option("--side", side, "measured side, A or B")->capture_default_str();

  std::string kind, dump_dir, z;
  auto* protocol = app.add_subcommand("protocol", "run a dissonance-generating protocol");
  protocol->fallthrough();
  protocol->add_option("kind", kind, "kraus | unitary")->required();
  protocol->add_option("--z", z, "target Werner weight in [0, 1/3]; fractions such as 1/3 accepted")->required();
  protocol->add_option("--dump-dir", dump_dir, "write initial, post-operation, final and target states here");

  double zmin = 0.0, zmax = 1.0;
  std::size_t steps = 21;
  std::string csv;
  auto* sweep_cmd = app.add_subcommand("sweep", "Werner-family measures on a z grid, as CSV");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--zmin", zmin)->capture_default_str();
  sweep_cmd->add_option("--zmax", zmax)->capture_default_str();
  sweep_cmd->add_option("--steps", steps)->capture_default_str();
  sweep_cmd->add_option("-o,--output", csv, "CSV file (stdout when omitted)");

  auto* decompose = app.add_subcommand("decompose", "product decomposition of werner(z)");
  decompose->fallthrough();
  decompose->add_option("--z", z, "Werner weight in [0, 1/3]")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomainError;
  }

  try {
    if (*state) return cmd_state(sa, out, err);
    if (*measures) return cmd_measures(input, json_path, g, out);
    if (*witness_cmd) return cmd_witness(input, side, out);
    if (*protocol) return cmd_protocol(kind, z, dump_dir, g, out);
    if (*sweep_cmd) return cmd_sweep(zmin, zmax, steps, csv, g, out);
    if (*decompose) return cmd_decompose(z, out);
  } catch (const ProtocolUnavailable& e) {
    err << "error: " << e.what() << "\northogonality_residual=" << general(e.residual()) << '\n';
    return kProtocolUnavailable;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kDomainError;
}

}  // namespace qdiss::cli
