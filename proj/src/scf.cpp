// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/error.hpp>
#include <rdmvqe/scf.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rdmvqe {

namespace {

constexpr double kDegeneracyTol = 1e-8;
constexpr int kDampedIterations = 5;

Eigen::Index dominant_ao(const Eigen::Ref<const Vector>& column) {
  Eigen::Index best = 0;
  const double top = column.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < column.size(); ++i)
    if (std::abs(column[i]) >= top - 1e-10) {
      best = i;
      break;
    }
  return best;
}

Matrix closed_shell_density(const Matrix& c, int n_occ) {
  const auto occ = c.leftCols(n_occ);
  return 2.0 * occ * occ.transpose();
}

double rms(const Matrix& m) { return std::sqrt(m.squaredNorm() / static_cast<double>(m.size())); }

}  // namespace

void canonicalize_orbitals(Matrix& c, Vector& e) {
  const auto n = c.cols();
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto top = dominant_ao(c.col(k));
    if (c(top, k) < 0) c.col(k) *= -1.0;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(e[a] - e[b]) > kDegeneracyTol) return e[a] < e[b];
    return dominant_ao(c.col(a)) < dominant_ao(c.col(b));
  });
  Matrix c2(c.rows(), n);
  Vector e2(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    c2.col(k) = c.col(order[k]);
    e2[k] = e[order[k]];
  }
  c = std::move(c2);
  e = std::move(e2);
}

Matrix two_electron_fock(const EriTensor& eri, const Matrix& p) {
  const auto n = static_cast<std::size_t>(p.rows());
  Matrix g = Matrix::Zero(p.rows(), p.cols());
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v <= m; ++v) {
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t s = 0; s < n; ++s)
          acc += p(l, s) * (eri(m, v, l, s) - 0.5 * eri(m, l, v, s));
      g(m, v) = g(v, m) = acc;
    }
  return g;
}

ScfResult run_rhf(const MoleculeBundle& bundle, const ScfOptions& opt) {
  if (bundle.n_electrons % 2 != 0)
    throw UnsupportedError("run_rhf: odd electron count (" + std::to_string(bundle.n_electrons) +
                           "); only closed-shell RHF is supported");
  const Matrix& s = bundle.overlap;
  const Matrix& h = bundle.core_h;
  const int n_occ = bundle.n_electrons / 2;
  const auto n = s.rows();
  if (n_occ > n) throw std::invalid_argument("run_rhf: more occupied orbitals than basis functions");

  Eigen::SelfAdjointEigenSolver<Matrix> seig(s);
  if (seig.info() != Eigen::Success || seig.eigenvalues().minCoeff() <= 0.0)
    throw ValidationError("overlap_spd", "overlap matrix is not positive definite");
  const Matrix x = seig.eigenvectors() * seig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                   seig.eigenvectors().transpose();

  auto diagonalize = [&](const Matrix& f, Matrix& c, Vector& e) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.transpose() * f * x);
    c = x * es.eigenvectors();
    e = es.eigenvalues();
    canonicalize_orbitals(c, e);
  };
  auto energy_of = [&](const Matrix& p, const Matrix& f) {
    return 0.5 * (p.cwiseProduct(h + f)).sum() + bundle.e_nuc;
  };

  ScfResult res;
  res.n_electrons = bundle.n_electrons;
  Matrix c;
  Vector e;
  if (bundle.mo_coeff.size() > 0 && bundle.mo_coeff.rows() == n && bundle.mo_coeff.cols() >= n_occ) {
    c = bundle.mo_coeff;
  } else {
    diagonalize(h, c, e);
  }
  Matrix p = closed_shell_density(c, n_occ);
  double e_old = energy_of(p, h + two_electron_fock(bundle.eri, p));

  for (int it = 1; it <= opt.max_iter; ++it) {
    const Matrix f = h + two_electron_fock(bundle.eri, p);
    diagonalize(f, c, e);
    Matrix p_new = closed_shell_density(c, n_occ);
    if (opt.damping && it <= kDampedIterations) p_new = 0.5 * (p_new + p);
    const double e_new = energy_of(p_new, h + two_electron_fock(bundle.eri, p_new));
    const double drms = rms(p_new - p);
    const double de = std::abs(e_new - e_old);
    p = std::move(p_new);
    e_old = e_new;
    res.n_iterations = it;
    if (de < opt.e_tol && drms < opt.rdm_rmsd_tol) {
      res.converged = true;
      break;
    }
  }

  // Final orbitals from the converged Fock matrix so P is exactly idempotent.
  const Matrix f = h + two_electron_fock(bundle.eri, p);
  if (!res.converged || opt.damping) {
    diagonalize(f, c, e);
    p = closed_shell_density(c, n_occ);
  }
  res.mo_coeff = c;
  res.mo_energies = e;
  res.density_ao = closed_shell_density(c, n_occ);
  res.energy = energy_of(res.density_ao, h + two_electron_fock(bundle.eri, res.density_ao));
  return res;
}

ScfResult run_rhf_inplace(MoleculeBundle& bundle, const ScfOptions& options) {
  auto res = run_rhf(bundle, options);
  bundle.mo_coeff = res.mo_coeff;
  bundle.mo_energies = res.mo_energies;
  return res;
}

}  // namespace rdmvqe
