// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/error.hpp>
#include <rdmvqe/integrals.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rdmvqe {

namespace {

constexpr double kPi = std::numbers::pi;

// Norm of a cartesian primitive with total angular momentum l <= 1.
double primitive_norm(int l, double alpha) {
  const double s = std::pow(2.0 * alpha / kPi, 0.75);
  return l == 0 ? s : s * 2.0 * std::sqrt(alpha);
}

// Same-centre overlap of two unit-coefficient primitives of momentum l.
double self_overlap(int l, double a, double b) {
  const double p = a + b;
  const double s = std::pow(kPi / p, 1.5);
  return l == 0 ? s : s / (2.0 * p);
}

void require_s_shells(const std::vector<GaussianShell>& shells, const char* what) {
  for (const auto& sh : shells)
    if (sh.l() != 0)
      throw UnsupportedError(std::string(what) + ": analytic integrals are implemented for s shells only");
}

}  // namespace

GaussianShell::GaussianShell(Vec3 center, int l, std::vector<double> exponents,
                             std::vector<double> contraction, int atom)
    : center_(std::move(center)),
      l_(l),
      atom_(atom),
      exponents_(std::move(exponents)),
      contraction_(std::move(contraction)) {
  if (l_ != 0 && l_ != 1) throw UnsupportedError("only s and p shells are supported");
  if (exponents_.empty() || exponents_.size() != contraction_.size())
    throw std::invalid_argument("shell exponent and coefficient lists must be non-empty and equal length");
  for (double e : exponents_)
    if (!(e > 0.0)) throw std::invalid_argument("shell exponents must be strictly positive");

  const std::size_t n = exponents_.size();
  coefficients_.resize(n);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      norm2 += contraction_[i] * contraction_[j] * primitive_norm(l_, exponents_[i]) *
               primitive_norm(l_, exponents_[j]) * self_overlap(l_, exponents_[i], exponents_[j]);
  const double scale = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < n; ++i)
    coefficients_[i] = contraction_[i] * primitive_norm(l_, exponents_[i]) * scale;
}

double boys_f0(double t) {
  if (t < 1e-12) return 1.0 - t / 3.0;
  const double st = std::sqrt(t);
  return 0.5 * std::sqrt(kPi / t) * std::erf(st);
}

GaussianShell sto3g_hydrogen_shell(const Vec3& center, int atom) {
  return GaussianShell(center, 0, {3.42525091, 0.62391373, 0.16885540},
                       {0.15432897, 0.53532814, 0.44463454}, atom);
}

Matrix overlap_matrix(const std::vector<GaussianShell>& shells) {
  require_s_shells(shells, "overlap");
  const auto n = static_cast<Eigen::Index>(shells.size());
  Matrix s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& A = shells[i];
      const auto& B = shells[j];
      const double ab2 = (A.center() - B.center()).squaredNorm();
      double v = 0.0;
      for (std::size_t a = 0; a < A.exponents().size(); ++a)
        for (std::size_t b = 0; b < B.exponents().size(); ++b) {
          const double ea = A.exponents()[a], eb = B.exponents()[b], p = ea + eb;
          v += A.coefficients()[a] * B.coefficients()[b] * std::pow(kPi / p, 1.5) *
               std::exp(-ea * eb / p * ab2);
        }
      s(i, j) = s(j, i) = v;
    }
  return s;
}

Matrix kinetic_matrix(const std::vector<GaussianShell>& shells) {
  require_s_shells(shells, "kinetic");
  const auto n = static_cast<Eigen::Index>(shells.size());
  Matrix t(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& A = shells[i];
      const auto& B = shells[j];
      const double ab2 = (A.center() - B.center()).squaredNorm();
      double v = 0.0;
      for (std::size_t a = 0; a < A.exponents().size(); ++a)
        for (std::size_t b = 0; b < B.exponents().size(); ++b) {
          const double ea = A.exponents()[a], eb = B.exponents()[b], p = ea + eb;
          const double mu = ea * eb / p;
          const double s = std::pow(kPi / p, 1.5) * std::exp(-mu * ab2);
          v += A.coefficients()[a] * B.coefficients()[b] * mu * (3.0 - 2.0 * mu * ab2) * s;
        }
      t(i, j) = t(j, i) = v;
    }
  return t;
}

Matrix nuclear_attraction_matrix(const std::vector<GaussianShell>& shells,
                                 const std::vector<Atom>& atoms) {
  require_s_shells(shells, "nuclear attraction");
  const auto n = static_cast<Eigen::Index>(shells.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& A = shells[i];
      const auto& B = shells[j];
      const double ab2 = (A.center() - B.center()).squaredNorm();
      double v = 0.0;
      for (std::size_t a = 0; a < A.exponents().size(); ++a)
        for (std::size_t b = 0; b < B.exponents().size(); ++b) {
          const double ea = A.exponents()[a], eb = B.exponents()[b], p = ea + eb;
          const Vec3 P = (ea * A.center() + eb * B.center()) / p;
          const double pre = 2.0 * kPi / p * std::exp(-ea * eb / p * ab2);
          double sum = 0.0;
          for (const auto& atom : atoms)
            sum -= atom.Z * boys_f0(p * (P - atom.position).squaredNorm());
          v += A.coefficients()[a] * B.coefficients()[b] * pre * sum;
        }
      m(i, j) = m(j, i) = v;
    }
  return m;
}

EriTensor eri_tensor(const std::vector<GaussianShell>& shells) {
  require_s_shells(shells, "eri");
  const std::size_t n = shells.size();
  EriTensor eri(n);
  const double pref = 2.0 * std::pow(kPi, 2.5);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= (r == p ? q : r); ++s) {
          const auto &A = shells[p], &B = shells[q], &C = shells[r], &D = shells[s];
          const double ab2 = (A.center() - B.center()).squaredNorm();
          const double cd2 = (C.center() - D.center()).squaredNorm();
          double v = 0.0;
          for (std::size_t a = 0; a < A.exponents().size(); ++a)
            for (std::size_t b = 0; b < B.exponents().size(); ++b) {
              const double ea = A.exponents()[a], eb = B.exponents()[b], e1 = ea + eb;
              const Vec3 P = (ea * A.center() + eb * B.center()) / e1;
              const double kab = std::exp(-ea * eb / e1 * ab2);
              const double cab = A.coefficients()[a] * B.coefficients()[b];
              for (std::size_t c = 0; c < C.exponents().size(); ++c)
                for (std::size_t d = 0; d < D.exponents().size(); ++d) {
                  const double ec = C.exponents()[c], ed = D.exponents()[d], e2 = ec + ed;
                  const Vec3 Q = (ec * C.center() + ed * D.center()) / e2;
                  const double kcd = std::exp(-ec * ed / e2 * cd2);
                  const double t = e1 * e2 / (e1 + e2) * (P - Q).squaredNorm();
                  v += cab * C.coefficients()[c] * D.coefficients()[d] * pref /
                       (e1 * e2 * std::sqrt(e1 + e2)) * kab * kcd * boys_f0(t);
                }
            }
          eri.at(p, q, r, s) = v;
        }
  return eri;
}

std::array<Matrix, 3> dipole_matrices(const std::vector<GaussianShell>& shells) {
  require_s_shells(shells, "dipole");
  const auto n = static_cast<Eigen::Index>(shells.size());
  std::array<Matrix, 3> out{Matrix(n, n), Matrix(n, n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& A = shells[i];
      const auto& B = shells[j];
      const double ab2 = (A.center() - B.center()).squaredNorm();
      Vec3 v = Vec3::Zero();
      for (std::size_t a = 0; a < A.exponents().size(); ++a)
        for (std::size_t b = 0; b < B.exponents().size(); ++b) {
          const double ea = A.exponents()[a], eb = B.exponents()[b], p = ea + eb;
          const Vec3 P = (ea * A.center() + eb * B.center()) / p;
          // first moment of a product Gaussian = its overlap times its centre
          v += A.coefficients()[a] * B.coefficients()[b] * std::pow(kPi / p, 1.5) *
               std::exp(-ea * eb / p * ab2) * P;
        }
      for (int k = 0; k < 3; ++k) out[k](i, j) = out[k](j, i) = v[k];
    }
  return out;
}

double nuclear_repulsion(const std::vector<Atom>& atoms) {
  double e = 0.0;
  for (std::size_t a = 0; a < atoms.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      e += atoms[a].Z * atoms[b].Z / (atoms[a].position - atoms[b].position).norm();
  return e;
}

MoleculeBundle build_hydrogen_bundle(const std::vector<Atom>& atoms, int charge) {
  if (atoms.empty()) throw std::invalid_argument("build_hydrogen_bundle: no atoms");
  MoleculeBundle b;
  b.atoms = atoms;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].Z != 1)
      throw UnsupportedError("build_hydrogen_bundle: unsupported element '" + atoms[i].symbol +
                             "' (Z=" + std::to_string(atoms[i].Z) + "); only hydrogen is built in");
    b.atoms[i].symbol = "H";
    b.shells.push_back(sto3g_hydrogen_shell(atoms[i].position, static_cast<int>(i)));
  }
  b.charge = charge;
  b.n_electrons = static_cast<int>(atoms.size()) - charge;
  if (b.n_electrons < 0) throw std::invalid_argument("build_hydrogen_bundle: negative electron count");
  b.overlap = overlap_matrix(b.shells);
  b.core_h = kinetic_matrix(b.shells) + nuclear_attraction_matrix(b.shells, b.atoms);
  b.eri = eri_tensor(b.shells);
  b.e_nuc = nuclear_repulsion(b.atoms);
  b.dipole_integrals = dipole_matrices(b.shells);
  return b;
}

BasisEvaluation eval_basis(const MoleculeBundle& bundle, const Vec3& r, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("eval_basis: order must be 0, 1 or 2");
  const auto n = static_cast<Eigen::Index>(bundle.n_ao());
  BasisEvaluation ev;
  ev.values = Vector::Zero(n);
  if (order >= 1) ev.gradients = Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(n, 3);
  if (order >= 2) ev.hessians.assign(static_cast<std::size_t>(n), Eigen::Matrix3d::Zero());

  Eigen::Index mu = 0;
  for (const auto& sh : bundle.shells) {
    const Vec3 d = r - sh.center();
    const double d2 = d.squaredNorm();
    for (std::size_t k = 0; k < sh.exponents().size(); ++k) {
      const double a = sh.exponents()[k];
      const double e = sh.coefficients()[k] * std::exp(-a * d2);
      if (sh.l() == 0) {
        ev.values[mu] += e;
        if (order >= 1) ev.gradients.row(mu) += (-2.0 * a * e) * d.transpose();
        if (order >= 2) {
          Eigen::Matrix3d h = 4.0 * a * a * (d * d.transpose());
          h.diagonal().array() -= 2.0 * a;
          ev.hessians[mu] += e * h;
        }
      } else {
        for (int c = 0; c < 3; ++c) {
          const Eigen::Index f = mu + c;
          ev.values[f] += d[c] * e;
          if (order >= 1) {
            Vec3 g = -2.0 * a * d[c] * d;
            g[c] += 1.0;
            ev.gradients.row(f) += e * g.transpose();
          }
          if (order >= 2) {
            Eigen::Matrix3d h = 4.0 * a * a * d[c] * (d * d.transpose());
            for (int i = 0; i < 3; ++i) {
              h(i, i) -= 2.0 * a * d[c];
              h(i, c) -= 2.0 * a * d[i];
              h(c, i) -= 2.0 * a * d[i];
            }
            ev.hessians[f] += e * h;
          }
        }
      }
    }
    mu += sh.size();
  }
  // Vectorized accumulation can leave last-bit asymmetries.
  for (auto& h : ev.hessians) h = (0.5 * (h + h.transpose())).eval();
  return ev;
}

std::array<Matrix, 3> dipole_integrals(const MoleculeBundle& bundle) {
  if (bundle.dipole_integrals) return *bundle.dipole_integrals;
  for (const auto& sh : bundle.shells)
    if (sh.l() != 0)
      throw UnsupportedError("dipole integrals for p shells must be supplied in the bundle");
  return dipole_matrices(bundle.shells);
}

}  // namespace rdmvqe
