// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/error.hpp>
#include <rdmvqe/simulator.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace rdmvqe {

namespace {

constexpr double kImagResidueTol = 1e-10;

std::uint32_t between_mask(const Statevector& s, int a, int b) {
  std::uint32_t m = 0;
  for (int q = std::min(a, b) + 1; q < std::max(a, b); ++q) m |= s.bit(q);
  return m;
}

double parity_sign(std::size_t idx, std::uint32_t mask) {
  return (std::popcount(static_cast<std::uint32_t>(idx) & mask) & 1) ? -1.0 : 1.0;
}

void check_qubits(const Statevector& s, const Gate& g) {
  for (int k = 0; k < g.arity(); ++k) {
    const int q = g.qubits[static_cast<std::size_t>(k)];
    if (q < 0 || q >= s.n_qubits())
      throw std::out_of_range(g.name() + ": qubit " + std::to_string(q) + " outside [0, " +
                              std::to_string(s.n_qubits()) + ")");
    for (int j = 0; j < k; ++j)
      if (g.qubits[static_cast<std::size_t>(j)] == q) throw std::invalid_argument(g.name() + ": repeated qubit");
  }
}

// Fermionic Givens rotation: |a=0,b=1> -> c|01> + s|10>.
void givens(Statevector& st, int a, int b, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const std::uint32_t ba = st.bit(a), bb = st.bit(b), mask = between_mask(st, a, b);
  auto& amp = st.amplitudes();
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if ((i & ba) || !(i & bb)) continue;
    const std::size_t j = i ^ ba ^ bb;
    const double ss = s * parity_sign(i, mask);
    const cplx v01 = amp[i], v10 = amp[j];
    amp[i] = c * v01 - ss * v10;
    amp[j] = ss * v01 + c * v10;
  }
}

// Sign of a+_{q3} a+_{q2} a_{q1} a_{q0} |i> under Jordan-Wigner, i.e. the
// parity of occupied qubits preceding each operator as it acts.
double excitation_sign(const Statevector& st, std::size_t i, const std::array<int, 4>& q) {
  auto idx = static_cast<std::uint32_t>(i);
  int flips = 0;
  for (int k : {0, 1, 2, 3}) {
    const std::uint32_t b = st.bit(q[static_cast<std::size_t>(k)]);
    // Qubits before q are the more significant bits.
    flips += std::popcount(idx & ~((b << 1) - 1));
    idx ^= b;
  }
  return (flips & 1) ? -1.0 : 1.0;
}

// exp(theta/2 (T - T^dag)) with T = a+_{q3} a+_{q2} a_{q1} a_{q0}.
void double_excitation(Statevector& st, const std::array<int, 4>& q, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const std::uint32_t occ = st.bit(q[0]) | st.bit(q[1]);
  const std::uint32_t vir = st.bit(q[2]) | st.bit(q[3]);
  auto& amp = st.amplitudes();
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if ((i & occ) != occ || (i & vir) != 0) continue;
    const std::size_t j = i ^ occ ^ vir;
    const double ss = s * excitation_sign(st, i, q);
    const cplx vi = amp[i], vj = amp[j];
    amp[i] = c * vi - ss * vj;
    amp[j] = ss * vi + c * vj;
  }
}

void pauli_rotation(Statevector& st, const PauliString& p, double angle) {
  if (p.n_qubits() != st.n_qubits()) throw std::invalid_argument("PauliRotation: qubit count mismatch");
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  static constexpr cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx phase = kI[p.y_count() & 3];
  const auto old = st.amplitudes();
  auto& amp = st.amplitudes();
  for (std::size_t b = 0; b < amp.size(); ++b) {
    // (P psi)[b ^ x] = phase * sign(b) * psi[b]
    const std::size_t t = b ^ p.x();
    const cplx pv = phase * parity_sign(b, p.z()) * old[b];
    amp[t] += cplx(0, -s) * pv;
  }
  for (std::size_t b = 0; b < amp.size(); ++b) amp[b] += (c - 1.0) * old[b];
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("Statevector: qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  amps_.assign(std::size_t{1} << n_qubits, cplx(0.0));
  amps_[0] = 1.0;
}

Statevector Statevector::basis_state(int n_qubits, std::size_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("Statevector: basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double Statevector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

Gate Gate::pauli_rotation(const PauliString& p, double angle, std::optional<int> param) {
  Gate g;
  g.kind = GateKind::PauliRotation;
  g.pauli = p;
  g.angle = angle;
  g.param = param;
  return g;
}

Gate Gate::single_excitation(int a, int b, double angle, std::optional<int> param) {
  Gate g;
  g.kind = GateKind::SingleExcitation;
  g.qubits = {a, b, -1, -1};
  g.angle = angle;
  g.param = param;
  return g;
}

Gate Gate::double_excitation(int q1, int q2, int q3, int q4, double angle, std::optional<int> param) {
  Gate g;
  g.kind = GateKind::DoubleExcitation;
  g.qubits = {q1, q2, q3, q4};
  g.angle = angle;
  g.param = param;
  return g;
}

Gate Gate::orbital_rotation(int q1, int q2, int q3, int q4, double angle, std::optional<int> param) {
  Gate g = double_excitation(q1, q2, q3, q4, angle, param);
  g.kind = GateKind::OrbitalRotation;
  return g;
}

Gate Gate::pauli_x(int q) {
  Gate g;
  g.kind = GateKind::PauliX;
  g.qubits = {q, -1, -1, -1};
  return g;
}

int Gate::arity() const {
  switch (kind) {
    case GateKind::PauliX: return 1;
    case GateKind::SingleExcitation: return 2;
    case GateKind::DoubleExcitation:
    case GateKind::OrbitalRotation: return 4;
    case GateKind::PauliRotation: return 0;
  }
  return 0;
}

std::string Gate::name() const {
  switch (kind) {
    case GateKind::PauliRotation: return "PauliRotation";
    case GateKind::SingleExcitation: return "SingleExcitation";
    case GateKind::DoubleExcitation: return "DoubleExcitation";
    case GateKind::OrbitalRotation: return "OrbitalRotation";
    case GateKind::PauliX: return "PauliX";
  }
  return "?";
}

Statevector prepare_hf_state(int n_qubits, int n_electrons) {
  if (n_electrons < 0 || n_electrons > n_qubits)
    throw std::invalid_argument("prepare_hf_state: " + std::to_string(n_electrons) + " electrons on " +
                                std::to_string(n_qubits) + " qubits");
  Statevector s(n_qubits);
  std::size_t idx = 0;
  for (int q = 0; q < n_electrons; ++q) idx |= s.bit(q);
  return Statevector::basis_state(n_qubits, idx);
}

void apply_gate_inplace(Statevector& state, const Gate& gate, double angle) {
  check_qubits(state, gate);
  const auto& q = gate.qubits;
  switch (gate.kind) {
    case GateKind::PauliX: {
      auto& amp = state.amplitudes();
      const auto m = state.bit(q[0]);
      for (std::size_t i = 0; i < amp.size(); ++i)
        if (!(i & m)) std::swap(amp[i], amp[i | m]);
      break;
    }
    case GateKind::SingleExcitation: givens(state, q[0], q[1], angle); break;
    case GateKind::DoubleExcitation: double_excitation(state, q, angle); break;
    case GateKind::OrbitalRotation:
      givens(state, q[0], q[2], angle);
      givens(state, q[1], q[3], angle);
      break;
    case GateKind::PauliRotation: pauli_rotation(state, gate.pauli, angle); break;
  }
}

void apply_gate_inplace(Statevector& state, const Gate& gate) { apply_gate_inplace(state, gate, gate.angle); }

Statevector apply_gate(Statevector state, const Gate& gate) {
  apply_gate_inplace(state, gate);
  return state;
}

double expectation(const Statevector& state, const kernels::CompiledPauliSum& obs) {
  if (obs.n_qubits != state.n_qubits()) throw std::invalid_argument("expectation: qubit count mismatch");
  const cplx v = kernels::parallel::expectation(state.amplitudes().data(), state.dim(), obs);
  if (std::abs(v.imag()) > kImagResidueTol)
    throw NumericalError("expectation: imaginary residue " + std::to_string(v.imag()));
  return v.real();
}

double expectation(const Statevector& state, const PauliSum& obs) {
  if (!obs.is_hermitian()) throw std::invalid_argument("expectation: observable is not Hermitian");
  return expectation(state, kernels::compile(obs));
}

}  // namespace rdmvqe
