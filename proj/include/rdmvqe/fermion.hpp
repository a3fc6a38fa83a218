// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/pauli.hpp>
#include <rdmvqe/types.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rdmvqe {

struct FcidumpData;

/// Spin-orbital layout: alpha of spatial orbital k on qubit 2k, beta on
/// 2k+1. Every qubit index derived from a spatial orbital goes through here.
constexpr int spin_orbital(int spatial, int spin) { return 2 * spatial + spin; }

/// Jordan-Wigner a_q = 1/2 (X_q + i Y_q) Z_0 ... Z_{q-1}.
PauliSum jw_annihilation(int q, int n_qubits);
/// Jordan-Wigner a_q^dagger = 1/2 (X_q - i Y_q) Z_0 ... Z_{q-1}.
PauliSum jw_creation(int q, int n_qubits);

/// Hermitian 1/2 (a_p^dag a_q + a_q^dag a_p) over spin orbitals.
PauliSum rdm1_observable(int p, int q, int n_qubits);
/// N = sum_p (I - Z_p) / 2.
PauliSum number_operator(int n_qubits);
/// Occupation count of one spin sector (0 = alpha, 1 = beta).
PauliSum spin_number_operator(int n_qubits, int spin);

/// MO-basis integrals of a whole molecule (or of an FCIDUMP file).
struct MoIntegrals {
  Matrix h;           // one-electron, MO x MO
  EriTensor eri;      // chemists' notation
  double e_nuc = 0.0; // constant shift (nuclear repulsion or FCIDUMP core energy)
  int n_electrons = 0;

  std::size_t n_mo() const { return static_cast<std::size_t>(h.rows()); }
};

/// AO -> MO transform with the bundle's MO coefficients.
MoIntegrals mo_integrals(const MoleculeBundle& bundle);
MoIntegrals mo_integrals(const FcidumpData& fcidump);

struct ActiveSpaceHamiltonian {
  Matrix h_eff;          // active x active, frozen-core folded
  EriTensor eri_act;
  double e_core = 0.0;   // nuclear repulsion + frozen-orbital energy
  int n_active_orb = 0;
  int n_active_elec = 0;
  std::vector<int> frozen;
  std::vector<int> active;

  int n_qubits() const { return 2 * n_active_orb; }
};

/// Parses "(n_e,n_o)" (parentheses and spaces optional). Throws
/// std::invalid_argument on malformed input.
std::pair<int, int> parse_active_space(const std::string& spec);

/// Standard CAS window: n_o orbitals starting after the (n_elec - n_e)/2
/// lowest MOs.
std::vector<int> select_active_orbitals(int n_electrons, int n_mo, int n_active_elec,
                                        int n_active_orb);

/// Folds the frozen doubly occupied orbitals into h_eff and e_core.
/// `frozen` defaults to the occupied MOs not listed in `active`; an explicit
/// list may only contain occupied MOs.
ActiveSpaceHamiltonian build_active_hamiltonian(const MoIntegrals& ints, const std::vector<int>& active,
                                                const std::optional<std::vector<int>>& frozen = std::nullopt);
ActiveSpaceHamiltonian build_active_hamiltonian(const MoleculeBundle& bundle, const std::vector<int>& active);

/// FCIDUMP view of an active-space problem (e_core as the constant).
FcidumpData to_fcidump(const ActiveSpaceHamiltonian& ham);

/// H = e_core + sum h_pq a+_p a_q + 1/2 sum <pq|sr> a+_p a+_q a_r a_s,
/// mapped with Jordan-Wigner and pruned. <pq|sr> = (ps|qr).
PauliSum hamiltonian_to_pauli(const ActiveSpaceHamiltonian& ham);

}  // namespace rdmvqe
