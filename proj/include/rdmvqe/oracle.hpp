// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/fermion.hpp>
#include <rdmvqe/rdm.hpp>
#include <rdmvqe/simulator.hpp>

namespace rdmvqe {

struct FciResult {
  double energy = 0.0;      // includes e_core
  Statevector state;        // ground state embedded in the full qubit space
  std::size_t sector_dim = 0;
};

/// Exact ground state in the S_z = 0 sector with n_active_elec electrons.
/// Limited to 12 qubits.
FciResult fci_ground_state(const ActiveSpaceHamiltonian& ham);
/// Same, from an already mapped qubit Hamiltonian.
FciResult fci_ground_state(const PauliSum& hamiltonian, int n_electrons);

/// Spin-summed RDM from sparse matrix-vector products with the
/// rdm1_observable operators.
RDM1 fci_rdm1(const Statevector& state, int n_spatial);

/// H |psi> without forming the matrix.
std::vector<cplx> apply_pauli_sum(const PauliSum& obs, const std::vector<cplx>& psi);

}  // namespace rdmvqe
