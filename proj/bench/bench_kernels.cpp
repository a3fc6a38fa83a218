// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Times the serial and OpenMP kernels on the same inputs and checks that
// they agree.

#include <rdmvqe/ansatz.hpp>
#include <rdmvqe/chemio.hpp>
#include <rdmvqe/fermion.hpp>
#include <rdmvqe/integrals.hpp>
#include <rdmvqe/kernels.hpp>
#include <rdmvqe/properties.hpp>
#include <rdmvqe/rdm.hpp>
#include <rdmvqe/scf.hpp>

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace rdmvqe;

namespace {

double time_ms(const std::function<void()>& f, int reps) {
  f();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, double diff) {
  std::printf("%-28s serial %10.3f ms  parallel %10.3f ms  speedup %5.2fx  max|diff| %.1e\n", name, serial, parallel,
              serial / parallel, diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  // H6 chain, (6,6) active space: 12 qubits.
  std::vector<Atom> atoms;
  for (int i = 0; i < 6; ++i) atoms.push_back({"H", 1, Vec3(0.0, 0.0, 1.6 * i)});
  MoleculeBundle b = build_hydrogen_bundle(atoms, 0);
  run_rhf_inplace(b);
  const auto act = select_active_orbitals(6, 6, 6, 6);
  const PauliSum h = hamiltonian_to_pauli(build_active_hamiltonian(b, act));
  const auto obs = kernels::compile(h);
  const AnsatzCircuit c = build_kupccgsd(6, 6, 1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  Vector theta(c.n_params);
  for (auto& t : theta) t = u(rng);
  const Statevector st = run_circuit(c, theta);
  const auto* psi = st.amplitudes().data();

  cplx es{}, ep{};
  const double ts = time_ms([&] { es = kernels::serial::expectation(psi, st.dim(), obs); }, 5);
  const double tp = time_ms([&] { ep = kernels::parallel::expectation(psi, st.dim(), obs); }, 5);
  std::printf("pauli terms: %zu, dimension %zu\n", obs.terms.size(), st.dim());
  report("pauli expectation", ts, tp, std::abs(es - ep));

  const RDM1 gamma = mo_to_ao(hf_rdm1(6, 6), b.mo_coeff);
  const CubeGrid grid = make_box_grid(b.atoms, 0.15, 3.0);
  std::vector<Vec3> pts;
  for (int i = 0; i < grid.counts[0]; ++i)
    for (int j = 0; j < grid.counts[1]; ++j)
      for (int k = 0; k < grid.counts[2]; ++k) pts.push_back(grid.point(i, j, k));
  std::vector<double> rs, rp;
  const double ds = time_ms([&] { rs = kernels::serial::density_points(gamma.matrix, b, pts); }, 1);
  const double dp = time_ms([&] { rp = kernels::parallel::density_points(gamma.matrix, b, pts); }, 1);
  double dd = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) dd = std::max(dd, std::abs(rs[i] - rp[i]));
  std::printf("density points: %zu\n", pts.size());
  report("density grid", ds, dp, dd);

  std::vector<Vec3> targets(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(2000, pts.size())));
  std::vector<double> vs, vp;
  const double vs_t = time_ms([&] { vs = kernels::serial::esp_electronic(pts, rs, grid.voxel_volume(), 0.075, targets); }, 1);
  const double vp_t = time_ms([&] { vp = kernels::parallel::esp_electronic(pts, rs, grid.voxel_volume(), 0.075, targets); }, 1);
  double dv = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) dv = std::max(dv, std::abs(vs[i] - vp[i]));
  std::printf("esp targets: %zu over %zu cells\n", targets.size(), pts.size());
  report("esp quadrature", vs_t, vp_t, dv);
  return (std::abs(es - ep) == 0.0 && dd == 0.0 && dv == 0.0) ? 0 : 1;
}
