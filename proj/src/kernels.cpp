// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/integrals.hpp>
#include <rdmvqe/kernels.hpp>

#include <bit>
#include <cmath>

namespace rdmvqe::kernels {

namespace {

// Below this much work per call the thread fork costs more than it saves.
constexpr std::size_t kParallelThreshold = 1u << 14;

cplx ipow(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

cplx reduce(const std::vector<cplx>& parts, const CompiledPauliSum& obs) {
  cplx acc = 0.0;
  for (std::size_t t = 0; t < parts.size(); ++t) acc += obs.terms[t].weight * parts[t];
  return acc;
}

double density_one(const Matrix& gamma, const MoleculeBundle& bundle, const Vec3& r) {
  const Vector phi = eval_basis(bundle, r, 0).values;
  return phi.dot(gamma * phi);
}

double esp_one(const std::vector<Vec3>& cells, const std::vector<double>& rho, double dv, double excl,
               const Vec3& r) {
  double acc = 0.0;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    const double d = (cells[j] - r).norm();
    if (d < excl) continue;
    acc += rho[j] / d;
  }
  return acc * dv;
}

}  // namespace

CompiledPauliSum compile(const PauliSum& sum) {
  CompiledPauliSum out;
  out.n_qubits = sum.n_qubits();
  out.terms.reserve(sum.size());
  for (const auto& [p, c] : sum.terms()) out.terms.push_back({p.x(), p.z(), c * ipow(p.y_count())});
  return out;
}

cplx term_expectation(const cplx* psi, std::size_t dim, const CompiledTerm& t) {
  double re = 0.0, im = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    const cplx v = std::conj(psi[b ^ t.x]) * psi[b];
    if (std::popcount(static_cast<std::uint32_t>(b) & t.z) & 1) {
      re -= v.real();
      im -= v.imag();
    } else {
      re += v.real();
      im += v.imag();
    }
  }
  return {re, im};
}

namespace serial {

cplx expectation(const cplx* psi, std::size_t dim, const CompiledPauliSum& obs) {
  std::vector<cplx> parts(obs.terms.size());
  for (std::size_t t = 0; t < parts.size(); ++t) parts[t] = term_expectation(psi, dim, obs.terms[t]);
  return reduce(parts, obs);
}

std::vector<double> density_points(const Matrix& gamma, const MoleculeBundle& bundle,
                                   const std::vector<Vec3>& points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = density_one(gamma, bundle, points[i]);
  return out;
}

std::vector<double> esp_electronic(const std::vector<Vec3>& cells, const std::vector<double>& rho,
                                   double dv, double excl, const std::vector<Vec3>& targets) {
  std::vector<double> out(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) out[i] = esp_one(cells, rho, dv, excl, targets[i]);
  return out;
}

}  // namespace serial

namespace parallel {

cplx expectation(const cplx* psi, std::size_t dim, const CompiledPauliSum& obs) {
  const auto n = static_cast<std::ptrdiff_t>(obs.terms.size());
  std::vector<cplx> parts(obs.terms.size());
#pragma omp parallel for schedule(static) if (static_cast<std::size_t>(n) * dim >= kParallelThreshold)
  for (std::ptrdiff_t t = 0; t < n; ++t)
    parts[static_cast<std::size_t>(t)] = term_expectation(psi, dim, obs.terms[static_cast<std::size_t>(t)]);
  return reduce(parts, obs);
}

std::vector<double> density_points(const Matrix& gamma, const MoleculeBundle& bundle,
                                   const std::vector<Vec3>& points) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::vector<double> out(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = density_one(gamma, bundle, points[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<double> esp_electronic(const std::vector<Vec3>& cells, const std::vector<double>& rho,
                                   double dv, double excl, const std::vector<Vec3>& targets) {
  const auto n = static_cast<std::ptrdiff_t>(targets.size());
  std::vector<double> out(targets.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = esp_one(cells, rho, dv, excl, targets[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace parallel

}  // namespace rdmvqe::kernels
