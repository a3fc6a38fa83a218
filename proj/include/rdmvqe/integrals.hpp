// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/types.hpp>

#include <array>
#include <vector>

namespace rdmvqe {

/// Boys function F0(t); series expansion below t = 1e-12.
double boys_f0(double t);

/// STO-3G hydrogen 1s shell centred on `center`.
GaussianShell sto3g_hydrogen_shell(const Vec3& center, int atom);

// Analytic integrals over contracted s shells.  p shells throw
// UnsupportedError.
Matrix overlap_matrix(const std::vector<GaussianShell>& shells);
Matrix kinetic_matrix(const std::vector<GaussianShell>& shells);
Matrix nuclear_attraction_matrix(const std::vector<GaussianShell>& shells,
                                 const std::vector<Atom>& atoms);
EriTensor eri_tensor(const std::vector<GaussianShell>& shells);
std::array<Matrix, 3> dipole_matrices(const std::vector<GaussianShell>& shells);
double nuclear_repulsion(const std::vector<Atom>& atoms);

/// Builds a complete STO-3G bundle for an all-hydrogen system. The MO
/// coefficients are left empty for the SCF to fill. Throws UnsupportedError
/// for any non-hydrogen atom.
MoleculeBundle build_hydrogen_bundle(const std::vector<Atom>& atoms, int charge);

/// Values, gradients and Hessians of every AO at one point.
struct BasisEvaluation {
  Vector values;                          // n_ao
  Eigen::Matrix<double, Eigen::Dynamic, 3> gradients;  // n_ao x 3
  std::vector<Eigen::Matrix3d> hessians;  // n_ao, symmetric by construction
};

/// `order` is 0 (values), 1 (+gradients) or 2 (+Hessians).
BasisEvaluation eval_basis(const MoleculeBundle& bundle, const Vec3& r, int order);

/// Dipole integrals (nu|r|mu) about the origin. Uses the bundle's own
/// matrices when present, otherwise computes them (s shells only).
std::array<Matrix, 3> dipole_integrals(const MoleculeBundle& bundle);

}  // namespace rdmvqe
