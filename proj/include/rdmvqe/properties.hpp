// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/rdm.hpp>
#include <rdmvqe/types.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rdmvqe {

inline constexpr double kAuToDebye = 2.541746;

struct DensityPoint {
  double rho = 0.0;
  Vec3 gradient = Vec3::Zero();
  Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
  double laplacian = 0.0;
};

/// rho, its gradient and Hessian at r. Throws std::invalid_argument unless
/// gamma is in the AO basis.
DensityPoint density_at(const RDM1& gamma, const MoleculeBundle& bundle, const Vec3& r);

/// Axis-aligned grid over the atom bounding box plus `padding` on each side.
CubeGrid make_box_grid(const std::vector<Atom>& atoms, double spacing, double padding);
CubeGrid density_cube(const RDM1& gamma, const MoleculeBundle& bundle, double spacing, double padding);
/// Sum of values times the voxel volume.
double grid_integral(const CubeGrid& grid);
/// a - b on identical grids.
CubeGrid difference_cube(const CubeGrid& a, const CubeGrid& b);

enum class CpKind { NCP, BCP, RCP, CCP, Degenerate };
std::string to_string(CpKind kind);

struct CriticalPoint {
  Vec3 position = Vec3::Zero();
  double rho = 0.0;
  double laplacian = 0.0;
  Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();  // ascending
  int rank = 0;
  int signature = 0;
  CpKind kind = CpKind::Degenerate;
  std::vector<int> nearest_atoms;
  double gradient_norm = 0.0;
};

struct CpOptions {
  double grad_tol = 1e-8;
  int max_newton_iter = 100;
  double max_step = 0.3;
  double dedup_distance = 1e-3;
  double degeneracy = 1e-8;
  double min_density = 1e-6;  // converged points in near-vacuum are dropped
};

struct CpSearch {
  std::vector<CriticalPoint> points;
  std::vector<std::string> skipped;  // one line per seed that failed
};

/// Newton search from every atom and every atom-pair midpoint.
CpSearch find_critical_points(const RDM1& gamma, const MoleculeBundle& bundle, const CpOptions& options = {});

/// Nuclear term exactly, electronic term by midpoint quadrature over
/// `density` skipping cells within half a spacing of r.
double electrostatic_potential(const MoleculeBundle& bundle, const Vec3& r, const CubeGrid& density);
/// ESP on the nodes of `density`; nodes closer than 0.1 bohr to a nucleus
/// take the value 0.1 bohr out along the nucleus-node direction.
CubeGrid esp_cube(const MoleculeBundle& bundle, const CubeGrid& density);
CubeGrid esp_cube(const RDM1& gamma, const MoleculeBundle& bundle, double spacing, double padding);

struct DipoleResult {
  Vec3 origin = Vec3::Zero();
  Vec3 au = Vec3::Zero();
  Vec3 debye = Vec3::Zero();
  double magnitude_debye = 0.0;
};

Vec3 center_of_nuclear_charge(const std::vector<Atom>& atoms);
/// Origin defaults to the centre of nuclear charge.
DipoleResult dipole_moment(const RDM1& gamma, const MoleculeBundle& bundle,
                           const std::optional<Vec3>& origin = std::nullopt);

struct MullikenReport {
  Vector ao_populations;
  std::vector<double> atom_populations;
  std::vector<double> charges;
  double total_population = 0.0;
  double total_charge = 0.0;
};

MullikenReport mulliken(const RDM1& gamma, const MoleculeBundle& bundle);

std::string format_critical_points(const CpSearch& search, const MoleculeBundle& bundle);
std::string format_mulliken(const MullikenReport& report, const MoleculeBundle& bundle);
std::string format_dipole(const DipoleResult& dipole);

}  // namespace rdmvqe
