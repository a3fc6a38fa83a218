// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/oracle.hpp>

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace rdmvqe {

namespace {

constexpr int kMaxOracleQubits = 12;

cplx ipow(int k) {
  static constexpr cplx v[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return v[k & 3];
}

}  // namespace

std::vector<cplx> apply_pauli_sum(const PauliSum& obs, const std::vector<cplx>& psi) {
  std::vector<cplx> out(psi.size(), 0.0);
  for (const auto& [p, c] : obs.terms()) {
    const cplx w = c * ipow(p.y_count());
    for (std::size_t b = 0; b < psi.size(); ++b) {
      if (psi[b] == 0.0) continue;
      const double sign = (std::popcount(static_cast<std::uint32_t>(b) & p.z()) & 1) ? -1.0 : 1.0;
      out[b ^ p.x()] += w * sign * psi[b];
    }
  }
  return out;
}

FciResult fci_ground_state(const PauliSum& h, int n_electrons) {
  const int nq = h.n_qubits();
  if (nq > kMaxOracleQubits)
    throw std::invalid_argument("fci_ground_state: " + std::to_string(nq) + " qubits exceeds the dense limit of " +
                                std::to_string(kMaxOracleQubits));
  if (nq % 2 != 0 || n_electrons % 2 != 0 || n_electrons < 0 || n_electrons > nq)
    throw std::invalid_argument("fci_ground_state: needs an even qubit count and a closed-shell electron count");
  Statevector probe(nq);
  std::uint32_t alpha_mask = 0;
  for (int k = 0; spin_orbital(k, 0) < nq; ++k) alpha_mask |= probe.bit(spin_orbital(k, 0));
  const int n_half = n_electrons / 2;

  std::vector<std::size_t> basis;
  std::unordered_map<std::size_t, std::size_t> where;
  for (std::size_t b = 0; b < probe.dim(); ++b) {
    const auto u = static_cast<std::uint32_t>(b);
    if (std::popcount(u & alpha_mask) == n_half && std::popcount(u & ~alpha_mask) == n_half) {
      where[b] = basis.size();
      basis.push_back(b);
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : h.terms()) {
    const cplx w = c * ipow(p.y_count());
    for (Eigen::Index j = 0; j < dim; ++j) {
      const std::size_t b = basis[static_cast<std::size_t>(j)];
      const auto it = where.find(b ^ p.x());
      if (it == where.end()) continue;
      const double sign = (std::popcount(static_cast<std::uint32_t>(b) & p.z()) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(it->second), j) += w * sign;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("fci_ground_state: diagonalization failed");

  FciResult r;
  r.energy = es.eigenvalues()[0];
  r.sector_dim = basis.size();
  r.state = Statevector(nq);
  auto& amp = r.state.amplitudes();
  amp[0] = 0.0;
  // Fix the global phase so the largest amplitude is real and positive.
  const Eigen::VectorXcd v = es.eigenvectors().col(0);
  Eigen::Index top = 0;
  v.cwiseAbs().maxCoeff(&top);
  const cplx phase = std::abs(v[top]) > 0 ? std::conj(v[top]) / std::abs(v[top]) : cplx(1.0);
  for (Eigen::Index j = 0; j < dim; ++j) amp[basis[static_cast<std::size_t>(j)]] = phase * v[j];
  return r;
}

FciResult fci_ground_state(const ActiveSpaceHamiltonian& ham) {
  if (ham.n_qubits() > kMaxOracleQubits)
    throw std::invalid_argument("fci_ground_state: active space needs " + std::to_string(ham.n_qubits()) +
                                " qubits, limit is " + std::to_string(kMaxOracleQubits));
  return fci_ground_state(hamiltonian_to_pauli(ham), ham.n_active_elec);
}

RDM1 fci_rdm1(const Statevector& state, int n_spatial) {
  if (state.n_qubits() != 2 * n_spatial) throw std::invalid_argument("fci_rdm1: qubit count mismatch");
  RDM1 r;
  r.matrix = Matrix::Zero(n_spatial, n_spatial);
  const auto& psi = state.amplitudes();
  for (int p = 0; p < n_spatial; ++p)
    for (int q = p; q < n_spatial; ++q) {
      double acc = 0.0;
      for (int s = 0; s < 2; ++s) {
        const auto hv = apply_pauli_sum(rdm1_observable(spin_orbital(p, s), spin_orbital(q, s), state.n_qubits()), psi);
        cplx dot = 0.0;
        for (std::size_t b = 0; b < psi.size(); ++b) dot += std::conj(psi[b]) * hv[b];
        acc += dot.real();
      }
      r.matrix(p, q) = r.matrix(q, p) = acc;
    }
  return r;
}

}  // namespace rdmvqe
