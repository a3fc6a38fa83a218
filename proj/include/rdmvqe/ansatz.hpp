// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/simulator.hpp>
#include <rdmvqe/types.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rdmvqe {

struct AnsatzCircuit {
  std::string name;
  int n_qubits = 0;
  int n_electrons = 0;
  int n_params = 0;
  std::vector<Gate> gates;
};

/// k layers of paired doubles DoubleExcitation(2p, 2p+1, 2q, 2q+1) followed
/// by same-spin singles SingleExcitation(2p+s, 2q+s), p < q, alpha first.
/// n_params = 3 k C(n_spatial, 2).
AnsatzCircuit build_kupccgsd(int n_spatial, int n_electrons, int k);

/// Brick wall of 4-qubit blocks on neighbouring spatial orbitals. Even
/// layers pair orbitals (0,1), (2,3), ...; odd layers (1,2), (3,4), ... and
/// fall back to the even pattern when that is empty (n_spatial = 2). A block
/// is [OrbitalRotation(pi)] DoubleExcitation(theta) OrbitalRotation(phi).
AnsatzCircuit build_gatefabric(int n_spatial, int n_electrons, int n_layers, bool include_pi = false);

/// Per-gate angle perturbation used by shift-rule gradients.
struct GateShift {
  std::size_t gate = 0;
  double delta = 0.0;
};

/// HF state followed by the circuit at parameters theta.
Statevector run_circuit(const AnsatzCircuit& circuit, const Vector& theta,
                        const std::optional<GateShift>& shift = std::nullopt);

/// One gate per line: "<kind> <qubits...> param=<slot|fixed:angle>".
std::string dump_circuit(const AnsatzCircuit& circuit);

}  // namespace rdmvqe
