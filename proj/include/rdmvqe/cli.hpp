// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/ansatz.hpp>
#include <rdmvqe/fermion.hpp>
#include <rdmvqe/rdm.hpp>
#include <rdmvqe/vqe.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rdmvqe {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitNotConverged = 2, kExitPartialScan = 3 };

std::string version_string();
/// "rdmvqe <version> flags: <args...>"; every artifact starts with it.
std::string artifact_header(const std::vector<std::string>& args);

struct VqeRunSpec {
  std::string ansatz = "kupccgsd";  // or "gatefabric"
  std::string active = "(2,2)";
  int layers = 1;
  bool include_pi = false;
  VqeConfig cfg;
  std::optional<std::uint64_t> seed;  // uniform [-0.1, 0.1] start when set
  bool oracle = true;                 // FCI reference when the space is small enough
};

struct VqeRunResult {
  ActiveSpaceHamiltonian ham;
  AnsatzCircuit circuit;
  Vector theta0;
  VqeTrace trace;
  RDM1 rdm_mo;  // merged, full MO space
  RDM1 rdm_ao;
  std::optional<double> e_fci;
};

/// SCF (when the bundle has no orbitals), active-space Hamiltonian, ansatz,
/// VQE, RDM merge and AO transform.
VqeRunResult run_vqe_pipeline(MoleculeBundle& bundle, const VqeRunSpec& spec, VqeMode mode);

/// Initial parameters: zeros, or uniform in [-0.1, 0.1] from mt19937_64(seed).
Vector initial_parameters(int n_params, const std::optional<std::uint64_t>& seed);

/// Parses "H 0 0 0; H 0 0 1.4" (newlines also separate atoms).
std::vector<Atom> parse_geometry(const std::string& text, double unit_to_bohr);

/// Entry point of the `rdmvqe` tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdmvqe
