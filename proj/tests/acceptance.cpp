// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one line per criterion and exits
// nonzero if any criterion fails. Criterion 3 needs externally generated
// CH5+ bundles (RDMVQE_CH5_BUNDLE_DIR) and is skipped without them.

#include "test_support.hpp"

#include <rdmvqe/ansatz.hpp>
#include <rdmvqe/chemio.hpp>
#include <rdmvqe/cli.hpp>
#include <rdmvqe/fermion.hpp>
#include <rdmvqe/oracle.hpp>
#include <rdmvqe/properties.hpp>
#include <rdmvqe/rdm.hpp>
#include <rdmvqe/scf.hpp>
#include <rdmvqe/vqe.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rdmvqe;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Outcome {
  enum Status { Pass, Fail, Skip } status = Fail;
  std::string detail;
};

Outcome check(bool ok, std::string detail) { return {ok ? Outcome::Pass : Outcome::Fail, std::move(detail)}; }

PauliSum h2_hamiltonian(const MoleculeBundle& b) { return hamiltonian_to_pauli(build_active_hamiltonian(b, {0, 1})); }

RDM1 hf_ao(const MoleculeBundle& b) {
  return mo_to_ao(hf_rdm1(static_cast<int>(b.n_mo()), b.n_electrons), b.mo_coeff);
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  const double golden = testsupport::golden("H2").e_rhf;
  auto b = build_hydrogen_bundle({{"H", 1, Vec3::Zero()}, {"H", 1, Vec3(0, 0, 1.4)}}, 0);
  const double e_rhf = run_rhf_inplace(b).energy;
  VqeRunSpec spec;
  const auto r = run_vqe_pipeline(b, spec, VqeMode::TwoPhase);
  const double dt = seconds_since(t0);
  const double d_rhf = std::abs(e_rhf - golden);
  const double d_vqe = r.e_fci ? std::abs(r.trace.energy - *r.e_fci) : 1.0;
  return check(d_rhf < 1e-5 && d_vqe < 1e-6 && dt < 60.0,
               "|E_RHF - golden| " + sci(d_rhf) + ", |E_VQE* - E_FCI| " + sci(d_vqe) + ", " + sci(dt) + " s");
}

Outcome criterion2() {
  const auto b = testsupport::h2_bundle();
  const auto ham = build_active_hamiltonian(b, {0, 1});
  const auto h = hamiltonian_to_pauli(ham);
  const double e_fci = fci_ground_state(ham).energy;
  VqeConfig cfg;
  cfg.e_tol = 1e-3;
  const auto c = build_gatefabric(2, 2, 1);
  const auto tr = run_vqe(h, c, Vector::Zero(c.n_params), cfg, VqeMode::TwoPhase);
  const double e_limit = tr.phase1_energy + cfg.e_limit_offset;
  bool ceiling = true;
  for (const auto& rec : tr.records)
    if (rec.phase == 2 && !rec.rejected) ceiling = ceiling && rec.energy <= e_limit;
  const double d_e = std::abs(tr.energy - e_fci);
  return check(tr.phase2_steps > 0 && tr.d_rdm < 1e-6 && ceiling && tr.energy <= e_limit && d_e < 1e-6,
               "phase-1 dRDM " + sci(tr.phase1_d_rdm) + " -> " + sci(tr.d_rdm) + " in " +
                   std::to_string(tr.phase2_steps) + " phase-2 steps, |E - E_FCI| " + sci(d_e) +
                   (ceiling ? ", ceiling held" : ", ceiling violated"));
}

// Published CH5+ (STO-3G) reference values. Bundles are named ch5plus_R<r>.json.
Outcome criterion3() {
  const char* dir_env = std::getenv("RDMVQE_CH5_BUNDLE_DIR");
  if (!dir_env) return {Outcome::Skip, "CONDITIONAL: RDMVQE_CH5_BUNDLE_DIR not set"};
  const std::filesystem::path dir(dir_env);
  auto load = [&](const std::string& r) { return parse_bundle(dir / ("ch5plus_R" + r + ".json")); };
  std::ostringstream msg;
  bool ok = true;

  // GateFabric (2,2): energy-only vs two-phase improvement.
  {
    auto b = load("1.3");
    VqeRunSpec spec;
    spec.ansatz = "gatefabric";
    spec.active = "(2,2)";
    const auto e = run_vqe_pipeline(b, spec, VqeMode::EnergyOnly);
    const auto s = run_vqe_pipeline(b, spec, VqeMode::TwoPhase);
    const double gain = e.trace.energy - s.trace.energy;
    ok = ok && std::abs(gain - 0.2598) <= 0.01;
    msg << "GateFabric gain " << gain << " (target 0.2598); ";
  }
  // k-UpCCGSD (4,4) two-phase energies and the R=1.3 dipole.
  const std::vector<std::pair<std::string, double>> table = {{"1.3", -39.91925646}, {"1.4", -39.91888334},
                                                             {"1.6", -39.91533128}, {"1.8", -39.91711269},
                                                             {"2.1", -39.90742620}};
  for (const auto& [r, target] : table) {
    if (!std::filesystem::exists(dir / ("ch5plus_R" + r + ".json"))) continue;
    auto b = load(r);
    VqeRunSpec spec;
    spec.active = "(4,4)";
    const auto s = run_vqe_pipeline(b, spec, VqeMode::TwoPhase);
    const double d = std::abs(s.trace.energy - target);
    ok = ok && d < 1e-4;
    msg << "R=" << r << " |dE| " << sci(d) << "; ";
    if (r == "1.3") {
      // The reference origin is unknown; accept any of the usual conventions.
      double best = 1e9;
      for (const auto& origin : {std::optional<Vec3>{}, std::optional<Vec3>{Vec3::Zero()}}) {
        const double mu = dipole_moment(s.rdm_ao, b, origin).magnitude_debye;
        best = std::min(best, std::abs(mu - 1.9212));
      }
      ok = ok && best < 5e-3;
      msg << "dipole |d| " << sci(best) << " D; ";
    }
  }
  return check(ok, msg.str());
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const std::vector<AnsatzCircuit> circuits = {build_kupccgsd(2, 2, 1), build_kupccgsd(4, 4, 1),
                                               build_gatefabric(2, 2, 2, true), build_gatefabric(4, 4, 2, true)};
  double tr_err = 0, sym_err = 0, eig_lo = 1e9, eig_hi = -1e9, n_err = 0;
  int samples = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& c = circuits[static_cast<std::size_t>(i % 4)];
    const auto s = run_circuit(c, testsupport::random_vector(c.n_params, rng, M_PI));
    const auto r = measure_rdm1(s, c.n_qubits / 2);
    tr_err = std::max(tr_err, std::abs(r.matrix.trace() - c.n_electrons));
    sym_err = std::max(sym_err, (r.matrix - r.matrix.transpose()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.matrix);
    eig_lo = std::min(eig_lo, es.eigenvalues().minCoeff());
    eig_hi = std::max(eig_hi, es.eigenvalues().maxCoeff());
    n_err = std::max(n_err, std::abs(expectation(s, number_operator(c.n_qubits)) - c.n_electrons));
    ++samples;
  }
  const double dt = seconds_since(t0);
  return check(samples == 200 && tr_err < 1e-8 && sym_err < 1e-10 && eig_lo >= -1e-8 && eig_hi <= 2 + 1e-8 &&
                   n_err < 1e-10 && dt < 300,
               "trace " + sci(tr_err) + ", symmetry " + sci(sym_err) + ", eigenvalues [" + sci(eig_lo) + ", " +
                   sci(eig_hi) + "], <N> " + sci(n_err) + ", " + sci(dt) + " s");
}

Outcome criterion5() {
  double worst = 0.0;
  auto compare = [&](const ActiveSpaceHamiltonian& ham) {
    const auto fci = fci_ground_state(ham);
    const auto measured = Rdm1Meter(ham.n_active_orb).measure(fci.state);
    const auto oracle = fci_rdm1(fci.state, ham.n_active_orb);
    worst = std::max(worst, (measured.matrix - oracle.matrix).cwiseAbs().maxCoeff());
  };
  compare(build_active_hamiltonian(testsupport::h2_bundle(), {0, 1}));
  compare(build_active_hamiltonian(testsupport::h4_bundle(), {0, 1, 2, 3}));
  const auto ch5 = parse_bundle(testsupport::data_dir() / "ch5plus_sto3g.bundle");
  compare(build_active_hamiltonian(ch5, select_active_orbitals(10, 10, 4, 4)));
  return check(worst < 1e-9, "max |D_measured - D_oracle| " + sci(worst) + " over H2 (2,2), H4 (4,4), CH5+ (4,4)");
}

Outcome criterion6() {
  std::ostringstream msg;
  bool ok = true;
  // Mulliken charge conservation.
  const auto ch5 = parse_bundle(testsupport::data_dir() / "ch5plus_sto3g.bundle");
  const auto m = mulliken(hf_ao(ch5), ch5);
  double qsum = 0.0;
  for (double q : m.charges) qsum += q;
  ok = ok && std::abs(qsum - ch5.charge) < 1e-8;
  msg << "charge sum err " << sci(std::abs(qsum - ch5.charge)) << "; ";

  const auto h2 = testsupport::h2_bundle();
  const auto g = hf_ao(h2);
  const double mu = dipole_moment(g, h2).magnitude_debye;
  ok = ok && mu < 1e-10;
  msg << "H2 |mu| " << sci(mu) << " D; ";

  const double integral = grid_integral(density_cube(g, h2, 0.1, 5.0));
  ok = ok && std::abs(integral - 2.0) <= 2e-3;
  msg << "H2 density integral " << integral << "; ";

  const auto cps = find_critical_points(g, h2);
  int ncp = 0, bcp = 0;
  double mid_err = 1e9;
  for (const auto& cp : cps.points) {
    if (cp.kind == CpKind::NCP) ++ncp;
    if (cp.kind == CpKind::BCP && cp.rank == 3 && cp.signature == -1) {
      ++bcp;
      mid_err = (cp.position - Vec3(0, 0, 0.7)).norm();
    }
  }
  ok = ok && ncp == 2 && bcp == 1 && cps.points.size() == 3 && mid_err < 1e-6;
  msg << "CPs " << ncp << " NCP + " << bcp << " BCP, midpoint err " << sci(mid_err);
  return check(ok, msg.str());
}

Outcome criterion7() {
  const auto b = testsupport::h2_bundle();
  const auto h = h2_hamiltonian(b);
  const VqeObjective uccs(h, build_kupccgsd(2, 2, 1));
  const VqeObjective fabric(h, build_gatefabric(2, 2, 2, true));
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const VqeObjective& obj = (i % 2) ? fabric : uccs;
    const Vector theta = testsupport::random_vector(obj.circuit().n_params, rng, M_PI);
    worst = std::max(worst, (obj.energy_gradient_shift(theta) - obj.energy_gradient_fd(theta, 1e-4))
                                .cwiseAbs()
                                .maxCoeff());
  }
  return check(worst < 1e-6, "max |g_shift - g_fd| " + sci(worst) + " over 50 random parameter vectors");
}

Outcome criterion8() {
  bool ok = true;
  std::ostringstream msg;
  for (const auto& b : {testsupport::h2_bundle(), parse_bundle(testsupport::data_dir() / "ch5plus_sto3g.bundle")}) {
    const std::string text = serialize_bundle(b);
    const auto back = parse_bundle_text(text);
    ok = ok && serialize_bundle(back) == text && back.overlap == b.overlap && back.core_h == b.core_h &&
         back.eri.packed() == b.eri.packed() && back.mo_coeff == b.mo_coeff;
  }
  msg << "bundles " << (ok ? "exact" : "differ") << "; ";

  const auto ham = build_active_hamiltonian(testsupport::h4_bundle(), {0, 1, 2, 3});
  const auto fd = to_fcidump(ham);
  const auto fd2 = parse_fcidump_text(serialize_fcidump(fd));
  const bool fd_ok = fd2.h == fd.h && fd2.eri.packed() == fd.eri.packed() && fd2.e_core == fd.e_core;
  ok = ok && fd_ok;
  msg << "FCIDUMP " << (fd_ok ? "exact" : "differs") << "; ";

  const auto h2 = testsupport::h2_bundle();
  const auto cube = density_cube(hf_ao(h2), h2, 0.3, 3.0);
  const auto [back, atoms] = parse_cube_text(serialize_cube(cube, h2.atoms, "acceptance"));
  double worst = 0.0;
  for (std::size_t i = 0; i < cube.values.size(); ++i)
    worst = std::max(worst, std::abs(back.values[i] - cube.values[i]) / std::max(1.0, std::abs(cube.values[i])));
  const bool cube_ok = back.counts == cube.counts && worst <= 1e-5 && atoms.size() == 2;
  ok = ok && cube_ok;
  msg << "cube max rel err " << sci(worst);
  return check(ok, msg.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"H2 end-to-end: RHF vs golden, two-phase k-UpCCGSD vs FCI, runtime", criterion1},
      {"Two-phase mechanism on under-converged GateFabric H2", criterion2},
      {"CH5+ reference targets (GateFabric gain, k-UpCCGSD energies, dipole)", criterion3},
      {"RDM invariants over 200 random parameter vectors", criterion4},
      {"Measured RDM of the FCI vector equals the oracle RDM", criterion5},
      {"Property identities (charge sum, H2 dipole, density integral, CP set)", criterion6},
      {"Shift-rule gradients vs central differences", criterion7},
      {"Bundle, FCIDUMP and cube round trips", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Outcome::Pass ? "[PASS]" : o.status == Outcome::Skip ? "[SKIP]" : "[FAIL]";
    if (o.status == Outcome::Fail) ++failures;
    std::cout << tag << " #" << (i + 1) << " " << criteria[i].first << " -- " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
