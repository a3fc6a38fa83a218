// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/kernels.hpp>
#include <rdmvqe/simulator.hpp>
#include <rdmvqe/types.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rdmvqe {

enum class RdmBasis { MO, AO };

/// Spin-summed one-particle density matrix D_pq = sum_s <a+_ps a_qs>.
struct RDM1 {
  Matrix matrix;
  RdmBasis basis = RdmBasis::MO;
  int offset = 0;  // first MO index of the block inside the full MO space

  Eigen::Index dim() const { return matrix.rows(); }
};

/// Measures the active-space RDM from statevectors. Observables for the
/// upper triangle are compiled once and reused.
class Rdm1Meter {
 public:
  explicit Rdm1Meter(int n_spatial);
  RDM1 measure(const Statevector& state) const;
  int n_spatial() const { return n_; }

 private:
  int n_;
  std::vector<kernels::CompiledPauliSum> obs_;  // row-major upper triangle, spin summed
};

RDM1 measure_rdm1(const Statevector& state, int n_spatial_active);

/// diag(2, ..., 2, 0, ...) for a closed-shell determinant.
RDM1 hf_rdm1(int n_mo, int n_electrons);

/// Active block from `active_rdm`, everything else from `hf_rdm`.
RDM1 merge_with_hf(const RDM1& active_rdm, const RDM1& hf_rdm, const std::vector<int>& active);

/// gamma = C D C^T.
RDM1 mo_to_ao(const RDM1& rdm_mo, const Matrix& mo_coeff);

/// Throws ValidationError("rdm_symmetry" / "rdm_trace" / "rdm_eigenvalues").
/// Eigenvalue bounds only apply to MO-basis matrices.
void validate_rdm1(const RDM1& rdm, std::optional<double> expected_trace = std::nullopt);

/// Header line "MO <n> <offset>" or "AO <n> 0", then n rows. Lines starting
/// with '#' are comments.
std::string serialize_rdm1(const RDM1& rdm, const std::string& comment = {});
RDM1 parse_rdm1(const std::string& text);

}  // namespace rdmvqe
