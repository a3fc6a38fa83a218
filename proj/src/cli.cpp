// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/chemio.hpp>
#include <rdmvqe/cli.hpp>
#include <rdmvqe/error.hpp>
#include <rdmvqe/integrals.hpp>
#include <rdmvqe/oracle.hpp>
#include <rdmvqe/properties.hpp>
#include <rdmvqe/scf.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace rdmvqe {

namespace fs = std::filesystem;

namespace {

constexpr int kOracleMaxQubits = 12;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    if (!s.empty()) s += ' ';
    const bool quote = a.empty() || a.find_first_of(" \t;()") != std::string::npos;
    s += quote ? "'" + a + "'" : a;
  }
  return s;
}

VqeMode parse_mode(const std::string& m) {
  if (m == "energy") return VqeMode::EnergyOnly;
  if (m == "two-phase") return VqeMode::TwoPhase;
  throw std::invalid_argument("mode must be 'energy' or 'two-phase', got '" + m + "'");
}

GradientMode parse_gradient(const std::string& g) {
  if (g == "fd") return GradientMode::FiniteDifference;
  if (g == "shift") return GradientMode::ParameterShift;
  throw std::invalid_argument("gradient must be 'fd' or 'shift', got '" + g + "'");
}

RdmReference parse_reference(const std::string& r) {
  if (r == "current") return RdmReference::Current;
  if (r == "previous") return RdmReference::Previous;
  throw std::invalid_argument("rdm-reference must be 'current' or 'previous', got '" + r + "'");
}

// Options shared by `vqe` and the per-run block of a scan config.
struct VqeFlags {
  std::string mode = "two-phase";
  std::string gradient = "fd";
  std::string reference = "current";
  std::int64_t seed = -1;
  VqeRunSpec spec;
};

void add_vqe_flags(CLI::App* cmd, VqeFlags& f) {
  auto& c = f.spec.cfg;
  cmd->add_option("--ansatz", f.spec.ansatz, "kupccgsd or gatefabric")->check(CLI::IsMember({"kupccgsd", "gatefabric"}));
  cmd->add_option("--active", f.spec.active, "active space \"(n_e,n_o)\"");
  cmd->add_option("--layers,-k", f.spec.layers, "k for k-UpCCGSD, layer count for GateFabric");
  cmd->add_flag("--include-pi", f.spec.include_pi, "prepend the Pi gate to GateFabric blocks");
  cmd->add_option("--mode", f.mode, "energy or two-phase");
  cmd->add_option("--w-e", c.w_e);
  cmd->add_option("--w-rdm", c.w_rdm);
  cmd->add_option("--e-tol", c.e_tol);
  cmd->add_option("--rdm-tol", c.rdm_tol);
  cmd->add_option("--n-r", c.n_r, "consecutive rejections before stopping");
  cmd->add_option("--e-limit-offset", c.e_limit_offset);
  cmd->add_option("--lr", c.learning_rate, "learning rate");
  cmd->add_option("--max-iter-phase1", c.max_iter_phase1);
  cmd->add_option("--max-iter-phase2", c.max_iter_phase2);
  cmd->add_option("--gradient", f.gradient, "fd or shift");
  cmd->add_option("--fd-step", c.fd_step);
  cmd->add_option("--rdm-reference", f.reference, "current or previous");
  cmd->add_option("--seed", f.seed, "random start in [-0.1, 0.1]");
  cmd->add_flag("!--no-oracle", f.spec.oracle, "skip the FCI reference");
}

void finalize_flags(VqeFlags& f) {
  f.spec.cfg.gradient_mode = parse_gradient(f.gradient);
  f.spec.cfg.rdm_reference = parse_reference(f.reference);
  if (f.seed >= 0) f.spec.seed = static_cast<std::uint64_t>(f.seed);
  parse_active_space(f.spec.active);
  f.spec.cfg.validate();
}

void ensure_orbitals(MoleculeBundle& b) {
  if (b.mo_coeff.size() != 0) return;
  const ScfResult r = run_rhf_inplace(b);
  if (!r.converged) throw NumericalError("SCF did not converge; cannot build molecular orbitals");
}

std::string theta_text(const Vector& theta, const std::string& header) {
  std::string out = "# " + header + "\n";
  for (Eigen::Index i = 0; i < theta.size(); ++i) out += fmt("%.17e", theta[i]) + "\n";
  return out;
}

std::string table_row(const std::string& label, const VqeRunResult& r, VqeMode mode) {
  const auto& t = r.trace;
  std::string s = label;
  s += "  E " + fmt("%.8f", t.energy);
  if (mode == VqeMode::TwoPhase && t.phase2_steps > 0) {
    s += "  dRDM " + fmt("%.2E", t.phase1_d_rdm) + " (" + fmt("%.2E", t.d_rdm) + ")";
    s += "  steps " + std::to_string(t.phase1_steps) + " (" + std::to_string(t.phase2_steps) + ")";
  } else {
    s += "  dRDM " + fmt("%.2E", t.d_rdm);
    s += "  steps " + std::to_string(t.phase1_steps);
  }
  if (r.e_fci) s += "  E_FCI " + fmt("%.8f", *r.e_fci);
  s += "  " + to_string(t.reason);
  return s;
}

void write_vqe_artifacts(const fs::path& dir, const std::string& header, const VqeRunResult& r) {
  fs::create_directories(dir);
  write_text_file(dir / "trace.txt", serialize_trace(r.trace, header));
  write_text_file(dir / "theta.txt", theta_text(r.trace.theta, header));
  write_text_file(dir / "rdm_mo.txt", serialize_rdm1(r.rdm_mo, header));
  write_text_file(dir / "rdm_ao.txt", serialize_rdm1(r.rdm_ao, header));
}

RDM1 load_ao_rdm(const std::string& spec, MoleculeBundle& bundle) {
  ensure_orbitals(bundle);
  if (spec == "hf") return mo_to_ao(hf_rdm1(static_cast<int>(bundle.n_mo()), bundle.n_electrons), bundle.mo_coeff);
  RDM1 r = parse_rdm1(read_text_file(spec));
  if (r.basis == RdmBasis::AO) {
    if (static_cast<std::size_t>(r.dim()) != bundle.n_ao())
      throw std::invalid_argument("RDM dimension " + std::to_string(r.dim()) + " differs from the AO count " +
                                  std::to_string(bundle.n_ao()));
    return r;
  }
  if (static_cast<std::size_t>(r.dim()) != bundle.n_mo())
    throw std::invalid_argument("RDM dimension " + std::to_string(r.dim()) + " differs from the MO count " +
                                std::to_string(bundle.n_mo()));
  return mo_to_ao(r, bundle.mo_coeff);
}

int cmd_scf(const std::string& path, const ScfOptions& opt, const std::string& write_to, const std::string& header,
            std::ostream& out) {
  MoleculeBundle b = parse_bundle(path);
  const ScfResult r = run_rhf(b, opt);
  out << "# " << header << "\n";
  out << "E_RHF " << fmt("%.12f", r.energy) << "\n";
  out << "iterations " << r.n_iterations << "\n";
  out << "converged " << (r.converged ? "yes" : "no") << "\n";
  for (Eigen::Index i = 0; i < r.mo_energies.size(); ++i) out << "mo_energy " << i << " " << fmt("%.10f", r.mo_energies[i]) << "\n";
  if (!write_to.empty()) {
    b.mo_coeff = r.mo_coeff;
    b.mo_energies = r.mo_energies;
    write_bundle(b, write_to);
  }
  return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_vqe(const std::string& path, const VqeFlags& f, const std::string& out_dir, const std::string& header,
            std::ostream& out) {
  MoleculeBundle b = parse_bundle(path);
  const VqeMode mode = parse_mode(f.mode);
  const VqeRunResult r = run_vqe_pipeline(b, f.spec, mode);
  if (!out_dir.empty()) write_vqe_artifacts(out_dir, header, r);
  out << "# " << header << "\n";
  out << table_row(f.spec.ansatz + " " + f.spec.active + " " + f.mode, r, mode) << "\n";
  return r.trace.converged() ? kExitOk : kExitNotConverged;
}

struct PropertyFlags {
  std::string rdm = "hf";
  std::string rdm_ref;
  std::vector<std::string> which{"dipole", "mulliken"};
  double spacing = 0.1;
  double esp_spacing = 0.3;
  double padding = 4.0;
  std::vector<double> origin;
  std::string out_dir;
};

int cmd_properties(const std::string& path, const PropertyFlags& f, const std::string& header, std::ostream& out) {
  MoleculeBundle b = parse_bundle(path);
  const RDM1 gamma = load_ao_rdm(f.rdm, b);
  std::optional<RDM1> gamma_ref;
  if (!f.rdm_ref.empty()) gamma_ref = load_ao_rdm(f.rdm_ref, b);
  auto wants = [&](const char* w) { return std::find(f.which.begin(), f.which.end(), w) != f.which.end(); };
  for (const auto& w : f.which)
    if (w != "density" && w != "esp" && w != "dipole" && w != "mulliken" && w != "cps")
      throw std::invalid_argument("unknown property '" + w + "'");
  const bool files = !f.out_dir.empty();
  if (files) fs::create_directories(f.out_dir);
  const fs::path dir = f.out_dir;
  out << "# " << header << "\n";

  if (wants("density")) {
    const CubeGrid g = density_cube(gamma, b, f.spacing, f.padding);
    out << "density_integral " << fmt("%.8f", grid_integral(g)) << "\n";
    if (files) write_cube(g, b.atoms, dir / "density.cube", header);
    if (gamma_ref) {
      const CubeGrid d = difference_cube(g, density_cube(*gamma_ref, b, f.spacing, f.padding));
      const double maxabs = std::accumulate(d.values.begin(), d.values.end(), 0.0,
                                            [](double m, double v) { return std::max(m, std::abs(v)); });
      out << "density_difference_max " << fmt("%.6E", maxabs) << "\n";
      if (files) write_cube(d, b.atoms, dir / "density_diff.cube", header);
    }
  }
  if (wants("esp")) {
    const CubeGrid e = esp_cube(gamma, b, f.esp_spacing, f.padding);
    if (files) write_cube(e, b.atoms, dir / "esp.cube", header);
    if (gamma_ref) {
      const CubeGrid d = difference_cube(e, esp_cube(*gamma_ref, b, f.esp_spacing, f.padding));
      if (files) write_cube(d, b.atoms, dir / "esp_diff.cube", header);
    }
    out << "esp_points " << e.size() << "\n";
  }
  if (wants("dipole")) {
    std::optional<Vec3> origin;
    if (!f.origin.empty()) {
      if (f.origin.size() != 3) throw std::invalid_argument("--origin needs three values");
      origin = Vec3(f.origin[0], f.origin[1], f.origin[2]);
    }
    const std::string text = format_dipole(dipole_moment(gamma, b, origin));
    out << text;
    if (files) write_text_file(dir / "dipole.txt", "# " + header + "\n" + text);
  }
  if (wants("mulliken")) {
    const std::string text = format_mulliken(mulliken(gamma, b), b);
    out << text;
    if (files) write_text_file(dir / "mulliken.txt", "# " + header + "\n" + text);
  }
  if (wants("cps")) {
    const std::string text = format_critical_points(find_critical_points(gamma, b), b);
    out << text;
    if (files) write_text_file(dir / "critical_points.txt", "# " + header + "\n" + text);
  }
  return kExitOk;
}

int cmd_scan(const std::string& config_path, const std::string& header, std::ostream& out, std::ostream& err) {
  using nlohmann::json;
  json cfg;
  try {
    cfg = json::parse(read_text_file(config_path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scan config: ") + e.what());
  }
  if (!cfg.is_object() || !cfg.contains("geometries") || !cfg["geometries"].is_array())
    throw ParseError("scan config needs a 'geometries' array");

  // Per-run settings: the same names as the vqe flags, without dashes.
  VqeFlags f;
  if (cfg.contains("vqe")) {
    const json& v = cfg["vqe"];
    if (!v.is_object()) throw ParseError("scan config: 'vqe' must be an object");
    auto& c = f.spec.cfg;
    for (const auto& [key, val] : v.items()) {
      if (key == "ansatz") f.spec.ansatz = val.get<std::string>();
      else if (key == "active") f.spec.active = val.get<std::string>();
      else if (key == "layers") f.spec.layers = val.get<int>();
      else if (key == "include_pi") f.spec.include_pi = val.get<bool>();
      else if (key == "w_e") c.w_e = val.get<double>();
      else if (key == "w_rdm") c.w_rdm = val.get<double>();
      else if (key == "e_tol") c.e_tol = val.get<double>();
      else if (key == "rdm_tol") c.rdm_tol = val.get<double>();
      else if (key == "n_r") c.n_r = val.get<int>();
      else if (key == "e_limit_offset") c.e_limit_offset = val.get<double>();
      else if (key == "lr") c.learning_rate = val.get<double>();
      else if (key == "max_iter_phase1") c.max_iter_phase1 = val.get<int>();
      else if (key == "max_iter_phase2") c.max_iter_phase2 = val.get<int>();
      else if (key == "gradient") f.gradient = val.get<std::string>();
      else if (key == "fd_step") c.fd_step = val.get<double>();
      else if (key == "rdm_reference") f.reference = val.get<std::string>();
      else if (key == "seed") f.seed = val.get<std::int64_t>();
      else if (key == "oracle") f.spec.oracle = val.get<bool>();
      else throw ParseError("scan config: unknown vqe key '" + key + "'");
    }
  }
  finalize_flags(f);
  const fs::path base = fs::path(config_path).parent_path();
  const std::string out_dir = cfg.value("out_dir", std::string());

  out << "# " << header << "\n";
  out << "# label  E_VQE  E_VQE*  E_FCI  E_dif  dRDM  steps\n";
  bool failed = false;
  for (const auto& g : cfg["geometries"]) {
    const std::string label = g.value("label", std::string("?"));
    try {
      fs::path p = g.at("bundle").get<std::string>();
      if (p.is_relative()) p = base / p;
      MoleculeBundle b = parse_bundle(p);
      const VqeRunResult e = run_vqe_pipeline(b, f.spec, VqeMode::EnergyOnly);
      const VqeRunResult s = run_vqe_pipeline(b, f.spec, VqeMode::TwoPhase);
      if (!out_dir.empty()) {
        write_vqe_artifacts(fs::path(out_dir) / label / "energy", header, e);
        write_vqe_artifacts(fs::path(out_dir) / label / "two-phase", header, s);
      }
      std::string row = label + "  " + fmt("%.8f", e.trace.energy) + "  " + fmt("%.8f", s.trace.energy) + "  " +
                        (s.e_fci ? fmt("%.8f", *s.e_fci) : std::string("-")) + "  " +
                        fmt("%.2E", e.trace.energy - s.trace.energy) + "  " + fmt("%.2E", s.trace.phase1_d_rdm) +
                        " (" + fmt("%.2E", s.trace.d_rdm) + ")  " + std::to_string(s.trace.phase1_steps) + " (" +
                        std::to_string(s.trace.phase2_steps) + ")";
      out << row << "\n";
    } catch (const std::exception& ex) {
      failed = true;
      out << label << "  FAILED\n";
      err << "scan: geometry '" << label << "' failed: " << ex.what() << "\n";
    }
  }
  return failed ? kExitPartialScan : kExitOk;
}

int cmd_build_h(const std::string& geometry, const std::string& unit, int charge, bool scf, const std::string& out_path,
                std::ostream& out) {
  double scale = 1.0;
  if (unit == "angstrom") scale = kAngstromToBohr;
  else if (unit != "bohr") throw std::invalid_argument("unit must be 'bohr' or 'angstrom'");
  MoleculeBundle b = build_hydrogen_bundle(parse_geometry(geometry, scale), charge);
  int code = kExitOk;
  if (scf) {
    const ScfResult r = run_rhf_inplace(b);
    out << "E_RHF " << fmt("%.12f", r.energy) << "\n";
    if (!r.converged) code = kExitNotConverged;
  }
  write_bundle(b, out_path);
  out << "wrote " << out_path << "\n";
  return code;
}

int cmd_fcidump(const std::string& path, const std::string& active, const std::string& out_path, std::ostream& out) {
  MoleculeBundle b = parse_bundle(path);
  ensure_orbitals(b);
  const auto [ne, no] = parse_active_space(active);
  const auto act = select_active_orbitals(b.n_electrons, static_cast<int>(b.n_mo()), ne, no);
  write_fcidump(to_fcidump(build_active_hamiltonian(b, act)), out_path);
  out << "wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

std::string version_string() { return RDMVQE_VERSION; }

std::string artifact_header(const std::vector<std::string>& args) {
  return "rdmvqe " + version_string() + " flags: " + join_args(args);
}

Vector initial_parameters(int n_params, const std::optional<std::uint64_t>& seed) {
  Vector t = Vector::Zero(n_params);
  if (!seed) return t;
  std::mt19937_64 rng(*seed);
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  for (int i = 0; i < n_params; ++i) t[i] = dist(rng);
  return t;
}

std::vector<Atom> parse_geometry(const std::string& text, double unit_to_bohr) {
  std::vector<Atom> atoms;
  std::string chunk;
  std::stringstream all(text);
  static const std::map<std::string, int> kZ = {{"H", 1}, {"He", 2}, {"C", 6}, {"N", 7}, {"O", 8}};
  while (std::getline(all, chunk, ';')) {
    std::stringstream lines(chunk);
    std::string line;
    while (std::getline(lines, line)) {
      std::istringstream ls(line);
      std::string sym;
      if (!(ls >> sym)) continue;
      Atom a;
      a.symbol = sym;
      const auto it = kZ.find(sym);
      if (it == kZ.end()) throw std::invalid_argument("geometry: unknown element '" + sym + "'");
      a.Z = it->second;
      if (!(ls >> a.position[0] >> a.position[1] >> a.position[2]))
        throw std::invalid_argument("geometry: atom '" + sym + "' needs three coordinates");
      a.position *= unit_to_bohr;
      atoms.push_back(a);
    }
  }
  if (atoms.empty()) throw std::invalid_argument("geometry: no atoms");
  return atoms;
}

VqeRunResult run_vqe_pipeline(MoleculeBundle& bundle, const VqeRunSpec& spec, VqeMode mode) {
  ensure_orbitals(bundle);
  const auto [ne, no] = parse_active_space(spec.active);
  const auto act = select_active_orbitals(bundle.n_electrons, static_cast<int>(bundle.n_mo()), ne, no);
  VqeRunResult r;
  r.ham = build_active_hamiltonian(bundle, act);
  const PauliSum h = hamiltonian_to_pauli(r.ham);
  if (spec.ansatz == "kupccgsd") r.circuit = build_kupccgsd(no, ne, spec.layers);
  else if (spec.ansatz == "gatefabric") r.circuit = build_gatefabric(no, ne, spec.layers, spec.include_pi);
  else throw std::invalid_argument("unknown ansatz '" + spec.ansatz + "'");
  r.theta0 = initial_parameters(r.circuit.n_params, spec.seed);
  r.trace = run_vqe(h, r.circuit, r.theta0, spec.cfg, mode);
  RDM1 active_rdm = r.trace.rdm;
  active_rdm.offset = act.front();
  validate_rdm1(active_rdm, static_cast<double>(r.ham.n_active_elec));
  r.rdm_mo = merge_with_hf(active_rdm, hf_rdm1(static_cast<int>(bundle.n_mo()), bundle.n_electrons), act);
  validate_rdm1(r.rdm_mo, static_cast<double>(bundle.n_electrons));
  r.rdm_ao = mo_to_ao(r.rdm_mo, bundle.mo_coeff);
  if (spec.oracle && r.ham.n_qubits() <= kOracleMaxQubits) r.e_fci = fci_ground_state(h, r.ham.n_active_elec).energy;
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rdmvqe: two-phase VQE with 1-RDM convergence and density-derived properties", "rdmvqe"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  std::string bundle_path, out_dir, config_path, out_path, geometry, unit = "bohr", active = "(2,2)";
  ScfOptions scf_opt;
  std::string scf_write;
  bool build_scf = false;
  int charge = 0;
  VqeFlags vf;
  PropertyFlags pf;

  auto* scf = app.add_subcommand("scf", "restricted Hartree-Fock on a bundle");
  scf->add_option("bundle", bundle_path)->required();
  scf->add_option("--e-tol", scf_opt.e_tol);
  scf->add_option("--rdm-tol", scf_opt.rdm_rmsd_tol, "RMS density change tolerance");
  scf->add_option("--max-iter", scf_opt.max_iter);
  scf->add_flag("--damping", scf_opt.damping, "0.5 density damping for the first iterations");
  scf->add_option("--write-bundle", scf_write, "write the bundle with converged orbitals");

  auto* vqe = app.add_subcommand("vqe", "energy-only or two-phase VQE in an active space");
  vqe->add_option("bundle", bundle_path)->required();
  add_vqe_flags(vqe, vf);
  vqe->add_option("--out-dir", out_dir, "directory for trace, theta and RDM files");

  auto* props = app.add_subcommand("properties", "density, ESP, dipole, Mulliken and critical points");
  props->add_option("bundle", bundle_path)->required();
  props->add_option("--rdm", pf.rdm, "RDM file (MO or AO) or 'hf'");
  props->add_option("--rdm-ref", pf.rdm_ref, "second RDM for difference cubes");
  props->add_option("--which", pf.which, "density esp dipole mulliken cps")->delimiter(',');
  props->add_option("--spacing", pf.spacing, "density grid spacing (bohr)");
  props->add_option("--esp-spacing", pf.esp_spacing, "ESP grid spacing (bohr)");
  props->add_option("--padding", pf.padding, "grid padding around the atoms (bohr)");
  props->add_option("--origin", pf.origin, "dipole origin x y z (bohr); default centre of nuclear charge")
      ->expected(3)
      ->delimiter(',');
  props->add_option("--out-dir", pf.out_dir);

  auto* scan = app.add_subcommand("scan", "energy-only and two-phase VQE over a list of geometries");
  scan->add_option("config", config_path, "JSON scan configuration")->required();

  auto* bh = app.add_subcommand("build-h", "STO-3G bundle for an all-hydrogen geometry");
  bh->add_option("--geometry", geometry, "\"H x y z; H x y z\"")->required();
  bh->add_option("--unit", unit, "bohr or angstrom");
  bh->add_option("--charge", charge);
  bh->add_flag("--scf", build_scf, "store converged RHF orbitals");
  bh->add_option("-o,--output", out_path)->required();

  auto* fd = app.add_subcommand("fcidump", "export an active-space Hamiltonian as FCIDUMP");
  fd->add_option("bundle", bundle_path)->required();
  fd->add_option("--active", active);
  fd->add_option("-o,--output", out_path)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string header = artifact_header(args);
  try {
    if (*scf) return cmd_scf(bundle_path, scf_opt, scf_write, header, out);
    if (*vqe) {
      finalize_flags(vf);
      return cmd_vqe(bundle_path, vf, out_dir, header, out);
    }
    if (*props) return cmd_properties(bundle_path, pf, header, out);
    if (*scan) return cmd_scan(config_path, header, out, err);
    if (*bh) return cmd_build_h(geometry, unit, charge, build_scf, out_path, out);
    if (*fd) return cmd_fcidump(bundle_path, active, out_path, out);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace rdmvqe
