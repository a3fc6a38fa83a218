// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/kernels.hpp>
#include <rdmvqe/pauli.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace rdmvqe {

/// Dense state over 2^n basis states. Qubit 0 is the most significant bit of
/// a basis index, so |1100> is index 12 on four qubits.
class Statevector {
 public:
  static constexpr int kMaxQubits = 20;

  Statevector() = default;
  /// |0...0>.
  explicit Statevector(int n_qubits);
  static Statevector basis_state(int n_qubits, std::size_t index);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;
  std::uint32_t bit(int q) const { return 1u << (n_ - 1 - q); }

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

enum class GateKind { PauliRotation, SingleExcitation, DoubleExcitation, OrbitalRotation, PauliX };

/// One circuit element. Angle conventions (c = cos(t/2), s = sin(t/2)):
///   PauliRotation      exp(-i t/2 P)
///   SingleExcitation   on (a, b), a < b:  |01> -> c|01> + s|10>,  |10> -> c|10> - s|01>
///   DoubleExcitation   on (q1..q4):       |1100> -> c|1100> - s|0011>,  |0011> -> c|0011> + s|1100>
///   OrbitalRotation    SingleExcitation(t) on (q1, q3) and on (q2, q4)
/// Excitation amplitudes carry the Jordan-Wigner parity of the occupied
/// qubits strictly between the moved indices, so every excitation gate is a
/// true fermionic rotation.
struct Gate {
  GateKind kind = GateKind::PauliX;
  std::array<int, 4> qubits{-1, -1, -1, -1};
  PauliString pauli;
  double angle = 0.0;            // used when `param` is empty
  std::optional<int> param;      // index into the parameter vector

  static Gate pauli_rotation(const PauliString& p, double angle, std::optional<int> param = std::nullopt);
  static Gate single_excitation(int a, int b, double angle, std::optional<int> param = std::nullopt);
  static Gate double_excitation(int q1, int q2, int q3, int q4, double angle,
                                std::optional<int> param = std::nullopt);
  static Gate orbital_rotation(int q1, int q2, int q3, int q4, double angle,
                               std::optional<int> param = std::nullopt);
  static Gate pauli_x(int q);

  int arity() const;
  std::string name() const;
};

/// First `n_electrons` qubits set.
Statevector prepare_hf_state(int n_qubits, int n_electrons);

/// In-place application with an explicit angle (ignores gate.angle/param).
void apply_gate_inplace(Statevector& state, const Gate& gate, double angle);
/// In-place application at gate.angle.
void apply_gate_inplace(Statevector& state, const Gate& gate);
Statevector apply_gate(Statevector state, const Gate& gate);

/// Exact <psi|obs|psi>. Throws std::invalid_argument for a non-Hermitian
/// observable and NumericalError if the imaginary residue exceeds 1e-10.
double expectation(const Statevector& state, const PauliSum& obs);
double expectation(const Statevector& state, const kernels::CompiledPauliSum& obs);

}  // namespace rdmvqe
