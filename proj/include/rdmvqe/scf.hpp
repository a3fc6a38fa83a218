// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/types.hpp>

namespace rdmvqe {

struct ScfOptions {
  int max_iter = 100;
  double e_tol = 1e-10;         // hartree
  double rdm_rmsd_tol = 1e-8;   // RMS change of the AO density
  bool damping = false;         // mix 0.5 of the old density for the first 5 iterations
};

struct ScfResult {
  double energy = 0.0;   // total, including nuclear repulsion
  Matrix mo_coeff;       // AO x MO
  Vector mo_energies;
  Matrix density_ao;     // spin-summed
  int n_iterations = 0;
  bool converged = false;
  int n_electrons = 0;
};

/// Closed-shell Roothaan iterations with symmetric orthogonalization.
///
/// Starts from the bundle's MO coefficients when present, else from the core
/// Hamiltonian. MOs are returned in ascending energy; degenerate levels are
/// ordered by the index of their largest-magnitude AO coefficient, and every
/// MO is phased so that coefficient is positive. Non-convergence is reported
/// through `converged`, not thrown.
ScfResult run_rhf(const MoleculeBundle& bundle, const ScfOptions& options = {});

/// Same as run_rhf, then stores the MO coefficients/energies in `bundle`.
ScfResult run_rhf_inplace(MoleculeBundle& bundle, const ScfOptions& options = {});

/// Fixes the MO gauge in place (sign and degenerate ordering as above).
void canonicalize_orbitals(Matrix& mo_coeff, Vector& mo_energies);

/// Coulomb minus half exchange, G(P)_{mn} = sum_ls P_ls [(mn|ls) - 1/2 (ml|ns)].
Matrix two_electron_fock(const EriTensor& eri, const Matrix& density);

}  // namespace rdmvqe
