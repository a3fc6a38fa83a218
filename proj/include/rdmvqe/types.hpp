// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rdmvqe {

using Vec3 = Eigen::Vector3d;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kAngstromToBohr = 1.0 / 0.52917721092;

struct Atom {
  std::string symbol;
  int Z = 0;
  Vec3 position = Vec3::Zero();  // bohr
};

/// Contracted cartesian Gaussian shell (s or p).
///
/// The constructor takes textbook contraction coefficients, i.e. the weights
/// of *normalized* primitives, and folds primitive and contraction
/// normalization into `coefficients()`.  Evaluation code only ever sees the
/// folded values; `contraction()` keeps the input for serialization.
class GaussianShell {
 public:
  GaussianShell(Vec3 center, int l, std::vector<double> exponents,
                std::vector<double> contraction, int atom);

  const Vec3& center() const { return center_; }
  int l() const { return l_; }
  int atom() const { return atom_; }
  /// Number of cartesian functions: 1 for s, 3 for p (x, y, z order).
  int size() const { return l_ == 0 ? 1 : 3; }
  const std::vector<double>& exponents() const { return exponents_; }
  const std::vector<double>& contraction() const { return contraction_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  Vec3 center_;
  int l_;
  int atom_;
  std::vector<double> exponents_;
  std::vector<double> contraction_;
  std::vector<double> coefficients_;
};

/// Two-electron integrals (pq|rs) in chemists' notation with 8-fold
/// permutational symmetry, stored once per canonical index p>=q, r>=s, pq>=rs.
class EriTensor {
 public:
  EriTensor() = default;
  explicit EriTensor(std::size_t n);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return data_[index(p, q, r, s)];
  }
  double& at(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return data_[index(p, q, r, s)];
  }
  const std::vector<double>& packed() const { return data_; }
  static std::size_t index(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    const std::size_t pq = pair(p, q);
    const std::size_t rs = pair(r, s);
    return pair(pq, rs);
  }

 private:
  static std::size_t pair(std::size_t a, std::size_t b) {
    return a >= b ? a * (a + 1) / 2 + b : b * (b + 1) / 2 + a;
  }
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Everything a run needs about one molecule: geometry, basis, AO integrals
/// and (optionally) converged MO coefficients.
struct MoleculeBundle {
  std::vector<Atom> atoms;
  int charge = 0;
  int n_electrons = 0;
  std::vector<GaussianShell> shells;
  Matrix overlap;
  Matrix core_h;
  EriTensor eri;
  Matrix mo_coeff;  // AO x MO; empty until an SCF has run
  Vector mo_energies;
  double e_nuc = 0.0;
  std::optional<std::array<Matrix, 3>> dipole_integrals;  // (nu|r|mu), origin 0

  std::size_t n_ao() const { return static_cast<std::size_t>(overlap.rows()); }
  std::size_t n_mo() const { return static_cast<std::size_t>(mo_coeff.cols()); }
  /// Owning atom of every AO, in AO order.
  std::vector<int> ao_atoms() const;
};

/// Volumetric scalar data on a parallelepiped grid, z index fastest.
struct CubeGrid {
  Vec3 origin = Vec3::Zero();
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();  // row i = step along axis i
  std::array<int, 3> counts{0, 0, 0};
  std::vector<double> values;

  std::size_t size() const {
    return static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * counts[1] + j) * counts[2] + k;
  }
  Vec3 point(int i, int j, int k) const {
    return origin + i * axes.row(0).transpose() + j * axes.row(1).transpose() +
           k * axes.row(2).transpose();
  }
  double voxel_volume() const { return std::abs(axes.determinant()); }
};

}  // namespace rdmvqe
