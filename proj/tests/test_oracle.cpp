// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <rdmvqe/fermion.hpp>
#include <rdmvqe/oracle.hpp>

#include <catch_amalgamated.hpp>

#include <bit>

using namespace rdmvqe;

namespace {

// Determinant-space FCI written directly in second quantization. Determinants
// are bitstrings with spin orbital P on bit P; signs count occupied orbitals
// below the operator's index. Shares no code with the qubit mapping.
struct DetFci {
  const ActiveSpaceHamiltonian& ham;

  double h1(int p, int q) const {
    if (p % 2 != q % 2) return 0.0;
    return ham.h_eff(p / 2, q / 2);
  }
  // <PQ|RS> = (pr|qs) with spin selection.
  double g(int p, int q, int r, int s) const {
    if (p % 2 != r % 2 || q % 2 != s % 2) return 0.0;
    return ham.eri_act(static_cast<std::size_t>(p / 2), static_cast<std::size_t>(r / 2),
                       static_cast<std::size_t>(q / 2), static_cast<std::size_t>(s / 2));
  }
  static bool annihilate(unsigned& det, int p, int& sign) {
    if (!(det >> p & 1u)) return false;
    if (std::popcount(det & ((1u << p) - 1)) & 1) sign = -sign;
    det ^= 1u << p;
    return true;
  }
  static bool create(unsigned& det, int p, int& sign) {
    if (det >> p & 1u) return false;
    if (std::popcount(det & ((1u << p) - 1)) & 1) sign = -sign;
    det ^= 1u << p;
    return true;
  }

  double ground_energy() const {
    const int nso = ham.n_qubits();
    const int half = ham.n_active_elec / 2;
    std::vector<unsigned> dets;
    for (unsigned d = 0; d < (1u << nso); ++d) {
      int na = 0, nb = 0;
      for (int p = 0; p < nso; ++p)
        if (d >> p & 1u) (p % 2 ? nb : na)++;
      if (na == half && nb == half) dets.push_back(d);
    }
    std::map<unsigned, Eigen::Index> where;
    for (std::size_t i = 0; i < dets.size(); ++i) where[dets[i]] = static_cast<Eigen::Index>(i);
    const auto dim = static_cast<Eigen::Index>(dets.size());
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      const unsigned ket = dets[static_cast<std::size_t>(j)];
      for (int p = 0; p < nso; ++p)
        for (int q = 0; q < nso; ++q) {
          const double v = h1(p, q);
          if (v == 0.0) continue;
          unsigned d = ket;
          int sign = 1;
          if (!annihilate(d, q, sign) || !create(d, p, sign)) continue;
          h(where.at(d), j) += sign * v;
        }
      for (int p = 0; p < nso; ++p)
        for (int q = 0; q < nso; ++q)
          for (int r = 0; r < nso; ++r)
            for (int s = 0; s < nso; ++s) {
              const double v = g(p, q, r, s);
              if (v == 0.0) continue;
              unsigned d = ket;
              int sign = 1;
              // a+_P a+_Q a_S a_R
              if (!annihilate(d, r, sign) || !annihilate(d, s, sign) || !create(d, q, sign) || !create(d, p, sign))
                continue;
              h(where.at(d), j) += 0.5 * sign * v;
            }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    return es.eigenvalues()[0] + ham.e_core;
  }
};

ActiveSpaceHamiltonian full_space(const testsupport::Golden& g) {
  const auto b = testsupport::scf_bundle(g.atoms, g.charge);
  std::vector<int> all(b.n_mo());
  std::iota(all.begin(), all.end(), 0);
  return build_active_hamiltonian(b, all);
}

}  // namespace

TEST_CASE("FCI energies match the golden reference", "[oracle]") {
  for (const auto& g : testsupport::load_golden()) {
    INFO(g.name);
    const auto ham = full_space(g);
    const auto fci = fci_ground_state(ham);
    REQUIRE(std::abs(fci.energy - g.e_fci) < 1e-8);
    REQUIRE(fci.energy <= g.e_rhf + 1e-12);
    REQUIRE(std::abs(fci.state.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("FCI agrees with an independent determinant-space solver", "[oracle]") {
  for (const auto& g : testsupport::load_golden()) {
    INFO(g.name);
    const auto ham = full_space(g);
    REQUIRE(fci_ground_state(ham).energy == Catch::Approx(DetFci{ham}.ground_energy()).margin(1e-10));
  }
  // Frozen-core CH5+ (4,4) as a p-shell example.
  const auto b = parse_bundle(testsupport::data_dir() / "ch5plus_sto3g.bundle");
  const auto ham = build_active_hamiltonian(b, select_active_orbitals(10, 10, 4, 4));
  REQUIRE(fci_ground_state(ham).energy == Catch::Approx(DetFci{ham}.ground_energy()).margin(1e-10));
}

TEST_CASE("FCI sector dimension and state", "[oracle]") {
  const auto ham = full_space(testsupport::golden("H4"));
  const auto fci = fci_ground_state(ham);
  REQUIRE(fci.sector_dim == 36);
  // Residual of the eigen-equation in the full qubit space.
  const auto h = hamiltonian_to_pauli(ham);
  const auto hpsi = apply_pauli_sum(h, fci.state.amplitudes());
  double res = 0.0;
  for (std::size_t i = 0; i < hpsi.size(); ++i) res += std::norm(hpsi[i] - fci.energy * fci.state[i]);
  REQUIRE(std::sqrt(res) < 1e-9);
}

TEST_CASE("a constant Hamiltonian returns its constant", "[oracle]") {
  ActiveSpaceHamiltonian ham;
  ham.n_active_orb = 2;
  ham.n_active_elec = 2;
  ham.h_eff = Matrix::Zero(2, 2);
  ham.eri_act = EriTensor(2);
  ham.e_core = -3.25;
  REQUIRE(fci_ground_state(ham).energy == Catch::Approx(-3.25).margin(1e-14));
}

TEST_CASE("FCI natural occupations match the golden reference", "[oracle]") {
  for (const char* name : {"H2", "H4"}) {
    const auto g = testsupport::golden(name);
    const auto ham = full_space(g);
    const auto fci = fci_ground_state(ham);
    const auto rdm = fci_rdm1(fci.state, ham.n_active_orb);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rdm.matrix);
    std::vector<double> occ(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(occ.rbegin(), occ.rend());
    REQUIRE(occ.size() == g.fci_occupations.size());
    for (std::size_t i = 0; i < occ.size(); ++i) REQUIRE(occ[i] == Catch::Approx(g.fci_occupations[i]).margin(1e-6));
    REQUIRE(rdm.matrix.trace() == Catch::Approx(static_cast<double>(ham.n_active_elec)).margin(1e-10));
  }
}

TEST_CASE("oracle rejects oversized problems", "[oracle]") {
  PauliSum h(14);
  REQUIRE_THROWS(fci_ground_state(h, 2));
}
