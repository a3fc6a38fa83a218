// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/error.hpp>
#include <rdmvqe/vqe.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rdmvqe {

namespace {

constexpr double kRmsdEpsilon = 1e-24;

// Expectation values depend on a gate angle through frequencies
// omega * {1..R}.
struct ShiftSpectrum {
  double omega;
  int r;
};

ShiftSpectrum spectrum(GateKind kind) {
  switch (kind) {
    case GateKind::PauliRotation: return {1.0, 1};
    case GateKind::SingleExcitation:
    case GateKind::DoubleExcitation: return {0.5, 2};
    case GateKind::OrbitalRotation: return {0.5, 4};
    case GateKind::PauliX: break;
  }
  throw std::invalid_argument("no shift rule for an unparameterized gate");
}

double mean_sq_diff(const RDM1& a, const RDM1& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("rdm_rmsd: dimension mismatch");
  if (a.dim() == 0) throw std::invalid_argument("rdm_rmsd: empty matrices");
  return (a.matrix - b.matrix).squaredNorm() / static_cast<double>(a.matrix.size());
}

std::string theta_string(const Vector& theta) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Eigen::Index i = 0; i < theta.size(); ++i) os << (i ? ", " : "") << theta[i];
  os << "]";
  return os.str();
}

void check_finite(double value, int phase, int iteration, const Vector& theta) {
  if (!std::isfinite(value))
    throw NumericalError("non-finite cost in phase " + std::to_string(phase) + " at iteration " +
                         std::to_string(iteration) + ", theta = " + theta_string(theta));
}

}  // namespace

void VqeConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("VqeConfig: ") + what);
  };
  need(e_tol > 0, "e_tol must be > 0");
  need(rdm_tol > 0, "rdm_tol must be > 0");
  need(w_e >= 0, "w_E must be >= 0");
  need(w_rdm >= 0, "w_RDM must be >= 0");
  need(learning_rate > 0, "learning_rate must be > 0");
  need(n_r >= 1, "n_r must be >= 1");
  need(e_limit_offset >= 0, "e_limit_offset must be >= 0");
  need(max_iter_phase1 >= 0 && max_iter_phase2 >= 0, "iteration limits must be >= 0");
  need(fd_step > 0, "fd_step must be > 0");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::Phase1MaxIter: return "phase1_max_iter";
    case Termination::Phase2MaxIter: return "phase2_max_iter";
    case Termination::Rejections: return "rejections";
  }
  return "?";
}

double rdm_rmsd(const RDM1& a, const RDM1& b) { return std::sqrt(mean_sq_diff(a, b)); }

double rdm_rmsd_regularized(const RDM1& a, const RDM1& b) { return std::sqrt(mean_sq_diff(a, b) + kRmsdEpsilon); }

double vqe_cost(double energy, double d_rdm, const VqeConfig& cfg) { return cfg.w_e * energy + cfg.w_rdm * d_rdm; }

Vector finite_difference_gradient(const std::function<double(const Vector&)>& f, const Vector& theta, double step) {
  if (step <= 0) throw std::invalid_argument("finite_difference_gradient: step must be > 0");
  const auto n = theta.size();
  Vector g(n);
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector tp = theta, tm = theta;
    tp[i] += step;
    tm[i] -= step;
    g[i] = (f(tp) - f(tm)) / (2.0 * step);
  }
  return g;
}

VqeObjective::VqeObjective(const PauliSum& hamiltonian, AnsatzCircuit circuit)
    : ham_(kernels::compile(hamiltonian)), circuit_(std::move(circuit)), meter_(circuit_.n_qubits / 2) {
  if (hamiltonian.n_qubits() != circuit_.n_qubits)
    throw std::invalid_argument("VQE: Hamiltonian acts on " + std::to_string(hamiltonian.n_qubits()) +
                                " qubits but the circuit has " + std::to_string(circuit_.n_qubits));
  if (!hamiltonian.is_hermitian()) throw std::invalid_argument("VQE: Hamiltonian is not Hermitian");
  if (circuit_.n_qubits % 2 != 0) throw std::invalid_argument("VQE: circuit needs an even qubit count");
}

double VqeObjective::energy(const Vector& theta) const { return expectation(run_circuit(circuit_, theta), ham_); }

RDM1 VqeObjective::rdm(const Vector& theta) const { return meter_.measure(run_circuit(circuit_, theta)); }

std::pair<double, RDM1> VqeObjective::evaluate(const Vector& theta) const {
  const Statevector st = run_circuit(circuit_, theta);
  return {expectation(st, ham_), meter_.measure(st)};
}

Vector VqeObjective::energy_gradient_shift(const Vector& theta) const {
  const auto n_gates = static_cast<std::ptrdiff_t>(circuit_.gates.size());
  std::vector<double> per_gate(circuit_.gates.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t gi = 0; gi < n_gates; ++gi) {
    const auto g = static_cast<std::size_t>(gi);
    const Gate& gate = circuit_.gates[g];
    if (!gate.param) continue;
    const auto [omega, r] = spectrum(gate.kind);
    double acc = 0.0;
    for (int mu = 1; mu <= 2 * r; ++mu) {
      const double x = (2.0 * mu - 1.0) * std::numbers::pi / (2.0 * r);
      const double s = std::sin(x / 2.0);
      const double c = ((mu % 2) ? 1.0 : -1.0) / (4.0 * r * s * s);
      acc += c * expectation(run_circuit(circuit_, theta, GateShift{g, x / omega}), ham_);
    }
    per_gate[g] = omega * acc;
  }
  Vector grad = Vector::Zero(circuit_.n_params);
  for (std::size_t g = 0; g < per_gate.size(); ++g)
    if (circuit_.gates[g].param) grad[*circuit_.gates[g].param] += per_gate[g];
  return grad;
}

Vector VqeObjective::energy_gradient_fd(const Vector& theta, double step) const {
  return finite_difference_gradient([this](const Vector& t) { return energy(t); }, theta, step);
}

Vector cost_gradient(const VqeObjective& obj, const Vector& theta, const VqeConfig& cfg, const RDM1* reference) {
  const bool penalty = reference != nullptr && cfg.w_rdm != 0.0;
  if (cfg.gradient_mode == GradientMode::ParameterShift) {
    Vector g = cfg.w_e * obj.energy_gradient_shift(theta);
    if (penalty) {
      const RDM1 ref = *reference;
      g += cfg.w_rdm * finite_difference_gradient(
                           [&](const Vector& t) { return rdm_rmsd_regularized(obj.rdm(t), ref); }, theta, cfg.fd_step);
    }
    return g;
  }
  if (!penalty) {
    const double w = cfg.w_e;
    return finite_difference_gradient([&](const Vector& t) { return w * obj.energy(t); }, theta, cfg.fd_step);
  }
  const RDM1 ref = *reference;
  return finite_difference_gradient(
      [&](const Vector& t) {
        const auto [e, d] = obj.evaluate(t);
        return vqe_cost(e, rdm_rmsd_regularized(d, ref), cfg);
      },
      theta, cfg.fd_step);
}

VqeTrace run_vqe(const PauliSum& hamiltonian, const AnsatzCircuit& circuit, const Vector& theta0,
                 const VqeConfig& cfg, VqeMode mode) {
  cfg.validate();
  if (theta0.size() != circuit.n_params)
    throw std::invalid_argument("run_vqe: theta0 has " + std::to_string(theta0.size()) + " entries, circuit needs " +
                                std::to_string(circuit.n_params));
  const VqeObjective obj(hamiltonian, circuit);
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  VqeTrace tr;
  Vector theta = theta0;
  auto [energy, rdm] = obj.evaluate(theta);
  check_finite(energy, 1, 0, theta);
  RDM1 rdm_prev = rdm;
  tr.records.push_back({1, 0, energy, kNaN, energy, false});
  double d_last = kNaN;

  auto finish = [&](Termination why) {
    tr.theta = theta;
    tr.energy = energy;
    tr.rdm = rdm;
    tr.d_rdm = d_last;
    tr.reason = why;
    return tr;
  };

  // Phase 1: descent on the energy, RDM change only monitored.
  bool enter_phase2 = false;
  for (int it = 1; it <= cfg.max_iter_phase1; ++it) {
    theta -= cfg.learning_rate * cost_gradient(obj, theta, cfg, nullptr);
    auto [e_new, d_new] = obj.evaluate(theta);
    check_finite(e_new, 1, it, theta);
    const double delta = rdm_rmsd(d_new, rdm);
    tr.records.push_back({1, it, e_new, delta, e_new, false});
    ++tr.phase1_steps;
    const double de = std::abs(e_new - energy);
    rdm_prev = std::move(rdm);
    rdm = std::move(d_new);
    energy = e_new;
    d_last = delta;
    if (de < cfg.e_tol) {
      if (mode == VqeMode::EnergyOnly || delta < cfg.rdm_tol) {
        tr.phase1_energy = energy;
        tr.phase1_d_rdm = delta;
        return finish(Termination::Converged);
      }
      enter_phase2 = true;
      break;
    }
  }
  tr.phase1_energy = energy;
  tr.phase1_d_rdm = d_last;
  if (!enter_phase2) return finish(Termination::Phase1MaxIter);

  // Phase 2: descent on w_E E + w_RDM delta with the energy ceiling.
  const double e_limit = energy + cfg.e_limit_offset;
  int rejections = 0;
  for (int it = 1; it <= cfg.max_iter_phase2; ++it) {
    const RDM1& ref = cfg.rdm_reference == RdmReference::Current ? rdm : rdm_prev;
    const Vector trial = theta - cfg.learning_rate * cost_gradient(obj, theta, cfg, &ref);
    auto [e_t, d_t] = obj.evaluate(trial);
    const double delta = rdm_rmsd(d_t, rdm);
    const double cost = vqe_cost(e_t, rdm_rmsd_regularized(d_t, rdm), cfg);
    check_finite(cost, 2, it, trial);
    ++tr.phase2_steps;
    if (e_t > e_limit) {
      tr.records.push_back({2, it, e_t, delta, cost, true});
      if (++rejections >= cfg.n_r) return finish(Termination::Rejections);
      continue;
    }
    rejections = 0;
    tr.records.push_back({2, it, e_t, delta, cost, false});
    const double de = std::abs(e_t - energy);
    theta = trial;
    rdm_prev = std::move(rdm);
    rdm = std::move(d_t);
    energy = e_t;
    d_last = delta;
    if (de < cfg.e_tol && delta < cfg.rdm_tol) return finish(Termination::Converged);
  }
  return finish(Termination::Phase2MaxIter);
}

std::string serialize_trace(const VqeTrace& tr, const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "# phase iter E dRDM cost rejected\n";
  char buf[160];
  for (const auto& r : tr.records) {
    std::snprintf(buf, sizeof buf, "%d %d %.12f %.6e %.12f %d\n", r.phase, r.iteration, r.energy, r.d_rdm, r.cost,
                  r.rejected ? 1 : 0);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "# termination %s phase1_steps %d phase2_steps %d\n", to_string(tr.reason).c_str(),
                tr.phase1_steps, tr.phase2_steps);
  out += buf;
  return out;
}

}  // namespace rdmvqe
