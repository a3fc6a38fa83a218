// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/ansatz.hpp>
#include <rdmvqe/kernels.hpp>
#include <rdmvqe/pauli.hpp>
#include <rdmvqe/rdm.hpp>

#include <functional>
#include <string>
#include <vector>

namespace rdmvqe {

enum class GradientMode { FiniteDifference, ParameterShift };
enum class VqeMode { EnergyOnly, TwoPhase };

/// Which RDM the Phase-2 penalty compares against while differentiating.
///   Current:  the RDM of the iterate the step starts from.
///   Previous: the RDM of the iterate before that.
/// Either way the reference is a constant inside the gradient.
enum class RdmReference { Current, Previous };

struct VqeConfig {
  double w_e = 1.0;
  double w_rdm = 1.0;
  double e_tol = 1e-6;
  double rdm_tol = 1e-6;
  int n_r = 10;
  double e_limit_offset = 1e-4;
  double learning_rate = 0.4;
  int max_iter_phase1 = 500;
  int max_iter_phase2 = 500;
  GradientMode gradient_mode = GradientMode::FiniteDifference;
  double fd_step = 1e-4;
  RdmReference rdm_reference = RdmReference::Current;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct VqeRecord {
  int phase = 1;
  int iteration = 0;
  double energy = 0.0;
  double d_rdm = 0.0;  // NaN on the first record
  double cost = 0.0;
  bool rejected = false;
};

enum class Termination { Converged, Phase1MaxIter, Phase2MaxIter, Rejections };
std::string to_string(Termination t);

struct VqeTrace {
  std::vector<VqeRecord> records;
  Vector theta;
  RDM1 rdm;                 // active-space RDM at theta
  double energy = 0.0;      // energy at theta
  double d_rdm = 0.0;       // last accepted delta
  double phase1_energy = 0.0;
  double phase1_d_rdm = 0.0;
  int phase1_steps = 0;
  int phase2_steps = 0;
  Termination reason = Termination::Converged;

  bool converged() const { return reason == Termination::Converged; }
};

/// sqrt(mean |A - B|^2) over all N^2 entries.
double rdm_rmsd(const RDM1& current, const RDM1& previous);
/// sqrt(mean |A - B|^2 + 1e-24): the differentiable form used in the cost.
double rdm_rmsd_regularized(const RDM1& current, const RDM1& previous);
/// w_E E + w_RDM delta.
double vqe_cost(double energy, double d_rdm, const VqeConfig& cfg);

/// Central differences, one component per parameter.
Vector finite_difference_gradient(const std::function<double(const Vector&)>& f, const Vector& theta, double step);

/// Energy and RDM of a circuit against a Hamiltonian.
class VqeObjective {
 public:
  VqeObjective(const PauliSum& hamiltonian, AnsatzCircuit circuit);

  const AnsatzCircuit& circuit() const { return circuit_; }
  int n_spatial() const { return circuit_.n_qubits / 2; }
  double energy(const Vector& theta) const;
  RDM1 rdm(const Vector& theta) const;
  std::pair<double, RDM1> evaluate(const Vector& theta) const;

  /// Exact multi-term shift rule per gate, summed over gates sharing a slot.
  Vector energy_gradient_shift(const Vector& theta) const;
  Vector energy_gradient_fd(const Vector& theta, double step) const;

 private:
  kernels::CompiledPauliSum ham_;
  AnsatzCircuit circuit_;
  Rdm1Meter meter_;
};

/// Gradient of the full cost at theta. `reference` is null in Phase 1 (cost =
/// energy) and the constant comparison RDM in Phase 2.
Vector cost_gradient(const VqeObjective& obj, const Vector& theta, const VqeConfig& cfg, const RDM1* reference);

VqeTrace run_vqe(const PauliSum& hamiltonian, const AnsatzCircuit& circuit, const Vector& theta0,
                 const VqeConfig& cfg, VqeMode mode);

/// One record per line: "phase iter E dRDM cost rejected".
std::string serialize_trace(const VqeTrace& trace, const std::string& comment = {});

}  // namespace rdmvqe
