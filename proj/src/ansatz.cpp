// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/ansatz.hpp>
#include <rdmvqe/error.hpp>
#include <rdmvqe/fermion.hpp>

#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace rdmvqe {

namespace {

void check_sizes(const char* who, int n_spatial, int n_electrons) {
  if (n_spatial < 1) throw std::invalid_argument(std::string(who) + ": n_spatial must be positive");
  if (n_electrons < 0 || n_electrons > 2 * n_spatial)
    throw std::invalid_argument(std::string(who) + ": electron count does not fit the orbitals");
}

}  // namespace

AnsatzCircuit build_kupccgsd(int n_spatial, int n_electrons, int k) {
  check_sizes("build_kupccgsd", n_spatial, n_electrons);
  if (k < 1) throw std::invalid_argument("build_kupccgsd: k must be >= 1");
  if (n_electrons % 2 != 0) throw UnsupportedError("build_kupccgsd: odd electron count is not supported");
  AnsatzCircuit c;
  c.name = "kupccgsd";
  c.n_qubits = 2 * n_spatial;
  c.n_electrons = n_electrons;
  int slot = 0;
  for (int layer = 0; layer < k; ++layer) {
    for (int p = 0; p < n_spatial; ++p)
      for (int q = p + 1; q < n_spatial; ++q)
        c.gates.push_back(Gate::double_excitation(spin_orbital(p, 0), spin_orbital(p, 1), spin_orbital(q, 0),
                                                  spin_orbital(q, 1), 0.0, slot++));
    for (int p = 0; p < n_spatial; ++p)
      for (int q = p + 1; q < n_spatial; ++q)
        for (int s = 0; s < 2; ++s)
          c.gates.push_back(Gate::single_excitation(spin_orbital(p, s), spin_orbital(q, s), 0.0, slot++));
  }
  c.n_params = slot;
  return c;
}

AnsatzCircuit build_gatefabric(int n_spatial, int n_electrons, int n_layers, bool include_pi) {
  check_sizes("build_gatefabric", n_spatial, n_electrons);
  if (n_spatial < 2) throw std::invalid_argument("build_gatefabric: needs at least 2 spatial orbitals");
  if (n_layers < 1) throw std::invalid_argument("build_gatefabric: n_layers must be >= 1");
  AnsatzCircuit c;
  c.name = "gatefabric";
  c.n_qubits = 2 * n_spatial;
  c.n_electrons = n_electrons;
  int slot = 0;
  for (int layer = 0; layer < n_layers; ++layer) {
    int first = layer % 2;
    if (first + 1 >= n_spatial) first = 0;
    for (int p = first; p + 1 < n_spatial; p += 2) {
      const int q0 = spin_orbital(p, 0), q1 = spin_orbital(p, 1);
      const int q2 = spin_orbital(p + 1, 0), q3 = spin_orbital(p + 1, 1);
      if (include_pi) c.gates.push_back(Gate::orbital_rotation(q0, q1, q2, q3, std::numbers::pi));
      c.gates.push_back(Gate::double_excitation(q0, q1, q2, q3, 0.0, slot++));
      c.gates.push_back(Gate::orbital_rotation(q0, q1, q2, q3, 0.0, slot++));
    }
  }
  c.n_params = slot;
  return c;
}

Statevector run_circuit(const AnsatzCircuit& circuit, const Vector& theta, const std::optional<GateShift>& shift) {
  if (theta.size() != circuit.n_params)
    throw std::invalid_argument("run_circuit: expected " + std::to_string(circuit.n_params) + " parameters, got " +
                                std::to_string(theta.size()));
  Statevector st = prepare_hf_state(circuit.n_qubits, circuit.n_electrons);
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const Gate& gate = circuit.gates[g];
    double angle = gate.param ? theta[*gate.param] : gate.angle;
    if (shift && shift->gate == g) angle += shift->delta;
    apply_gate_inplace(st, gate, angle);
  }
  return st;
}

std::string dump_circuit(const AnsatzCircuit& c) {
  std::string out;
  char buf[64];
  for (const Gate& g : c.gates) {
    out += g.name();
    if (g.kind == GateKind::PauliRotation) out += " " + g.pauli.letters();
    for (int k = 0; k < g.arity(); ++k) out += " " + std::to_string(g.qubits[static_cast<std::size_t>(k)]);
    if (g.param) {
      out += " param=" + std::to_string(*g.param);
    } else {
      std::snprintf(buf, sizeof buf, " fixed=%.17g", g.angle);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace rdmvqe
