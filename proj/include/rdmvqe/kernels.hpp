// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Hot loops in two flavours: `serial` is the plain reference, `parallel`
// distributes the same per-item work over OpenMP threads.  Both write every
// item's result into its own slot and reduce in index order, so the two
// return bit-identical values.

#include <rdmvqe/pauli.hpp>
#include <rdmvqe/types.hpp>

#include <cstdint>
#include <vector>

namespace rdmvqe::kernels {

struct CompiledTerm {
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  cplx weight;  // coefficient times i^{#Y}
};

/// Flat form of a PauliSum for repeated evaluation.
struct CompiledPauliSum {
  int n_qubits = 0;
  std::vector<CompiledTerm> terms;
};

CompiledPauliSum compile(const PauliSum& sum);

/// <psi| P |psi> for one compiled term, unweighted phase included.
cplx term_expectation(const cplx* psi, std::size_t dim, const CompiledTerm& t);

namespace serial {
cplx expectation(const cplx* psi, std::size_t dim, const CompiledPauliSum& obs);
/// rho(r_i) = phi(r_i)^T gamma phi(r_i).
std::vector<double> density_points(const Matrix& gamma_ao, const MoleculeBundle& bundle,
                                   const std::vector<Vec3>& points);
/// Electronic ESP sum_j rho_j dV / |r - r_j| over cells farther than
/// `exclusion` from r.
std::vector<double> esp_electronic(const std::vector<Vec3>& cells, const std::vector<double>& rho,
                                   double cell_volume, double exclusion, const std::vector<Vec3>& targets);
}  // namespace serial

namespace parallel {
cplx expectation(const cplx* psi, std::size_t dim, const CompiledPauliSum& obs);
std::vector<double> density_points(const Matrix& gamma_ao, const MoleculeBundle& bundle,
                                   const std::vector<Vec3>& points);
std::vector<double> esp_electronic(const std::vector<Vec3>& cells, const std::vector<double>& rho,
                                   double cell_volume, double exclusion, const std::vector<Vec3>& targets);
}  // namespace parallel

}  // namespace rdmvqe::kernels
