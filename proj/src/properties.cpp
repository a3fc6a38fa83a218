// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/integrals.hpp>
#include <rdmvqe/kernels.hpp>
#include <rdmvqe/properties.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace rdmvqe {

namespace {

constexpr double kNucleusClamp = 0.1;
constexpr double kOnNucleus = 1e-10;
constexpr double kCoverage = 0.95;

void require_ao(const RDM1& g, const MoleculeBundle& b, const char* who) {
  if (g.basis != RdmBasis::AO) throw std::invalid_argument(std::string(who) + ": density matrix must be in the AO basis");
  if (static_cast<std::size_t>(g.dim()) != b.n_ao())
    throw std::invalid_argument(std::string(who) + ": density matrix dimension " + std::to_string(g.dim()) +
                                " differs from the AO count " + std::to_string(b.n_ao()));
}

std::string atom_label(const MoleculeBundle& b, int i) {
  return b.atoms[static_cast<std::size_t>(i)].symbol + std::to_string(i + 1);
}

std::vector<Vec3> grid_points(const CubeGrid& g) {
  std::vector<Vec3> pts;
  pts.reserve(g.size());
  for (int i = 0; i < g.counts[0]; ++i)
    for (int j = 0; j < g.counts[1]; ++j)
      for (int k = 0; k < g.counts[2]; ++k) pts.push_back(g.point(i, j, k));
  return pts;
}

double min_spacing(const CubeGrid& g) {
  return std::min({g.axes.row(0).norm(), g.axes.row(1).norm(), g.axes.row(2).norm()});
}

double nuclear_potential(const MoleculeBundle& b, const Vec3& r) {
  double v = 0.0;
  for (const auto& a : b.atoms) {
    const double d = (r - a.position).norm();
    if (d < kOnNucleus) throw std::invalid_argument("electrostatic_potential: point coincides with a nucleus");
    v += a.Z / d;
  }
  return v;
}

void check_coverage(const MoleculeBundle& b, const CubeGrid& density) {
  const double n = grid_integral(density);
  if (n < kCoverage * b.n_electrons - 1e-12)
    throw std::invalid_argument("electrostatic_potential: density grid integrates to " + std::to_string(n) +
                                " electrons, below 95% of " + std::to_string(b.n_electrons));
}

// Points within the clamp radius of a nucleus are moved out to it.
Vec3 clamp_from_nuclei(const MoleculeBundle& b, const Vec3& r) {
  for (const auto& a : b.atoms) {
    const Vec3 d = r - a.position;
    const double n = d.norm();
    if (n < kNucleusClamp) return a.position + kNucleusClamp * (n > kOnNucleus ? Vec3(d / n) : Vec3::UnitZ());
  }
  return r;
}

}  // namespace

DensityPoint density_at(const RDM1& gamma, const MoleculeBundle& bundle, const Vec3& r) {
  require_ao(gamma, bundle, "density_at");
  const BasisEvaluation ev = eval_basis(bundle, r, 2);
  const Matrix& g = gamma.matrix;
  const Vector gphi = g * ev.values;
  DensityPoint out;
  out.rho = ev.values.dot(gphi);
  out.gradient = 2.0 * ev.gradients.transpose() * gphi;
  out.hessian = 2.0 * ev.gradients.transpose() * g * ev.gradients;
  for (Eigen::Index m = 0; m < ev.values.size(); ++m)
    out.hessian += 2.0 * gphi[m] * ev.hessians[static_cast<std::size_t>(m)];
  out.laplacian = out.hessian.trace();
  return out;
}

CubeGrid make_box_grid(const std::vector<Atom>& atoms, double spacing, double padding) {
  if (!(spacing > 0)) throw std::invalid_argument("grid spacing must be > 0");
  if (padding < 0) throw std::invalid_argument("grid padding must be >= 0");
  if (atoms.empty()) throw std::invalid_argument("grid needs at least one atom");
  Vec3 lo = atoms[0].position, hi = atoms[0].position;
  for (const auto& a : atoms) {
    lo = lo.cwiseMin(a.position);
    hi = hi.cwiseMax(a.position);
  }
  CubeGrid g;
  g.origin = lo - Vec3::Constant(padding);
  g.axes = spacing * Eigen::Matrix3d::Identity();
  for (int d = 0; d < 3; ++d)
    g.counts[static_cast<std::size_t>(d)] =
        static_cast<int>(std::floor((hi[d] - lo[d] + 2 * padding) / spacing + 1e-9)) + 1;
  g.values.assign(g.size(), 0.0);
  return g;
}

CubeGrid density_cube(const RDM1& gamma, const MoleculeBundle& bundle, double spacing, double padding) {
  require_ao(gamma, bundle, "density_cube");
  CubeGrid g = make_box_grid(bundle.atoms, spacing, padding);
  g.values = kernels::parallel::density_points(gamma.matrix, bundle, grid_points(g));
  return g;
}

double grid_integral(const CubeGrid& g) {
  return std::accumulate(g.values.begin(), g.values.end(), 0.0) * g.voxel_volume();
}

CubeGrid difference_cube(const CubeGrid& a, const CubeGrid& b) {
  if (a.counts != b.counts || !a.origin.isApprox(b.origin, 1e-12) || !a.axes.isApprox(b.axes, 1e-12))
    throw std::invalid_argument("difference_cube: grids differ");
  CubeGrid out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] - b.values[i];
  return out;
}

std::string to_string(CpKind k) {
  switch (k) {
    case CpKind::NCP: return "NCP";
    case CpKind::BCP: return "BCP";
    case CpKind::RCP: return "RCP";
    case CpKind::CCP: return "CCP";
    case CpKind::Degenerate: return "degenerate";
  }
  return "?";
}

CpSearch find_critical_points(const RDM1& gamma, const MoleculeBundle& bundle, const CpOptions& opt) {
  require_ao(gamma, bundle, "find_critical_points");
  const auto& atoms = bundle.atoms;
  std::vector<Vec3> seeds;
  for (const auto& a : atoms) seeds.push_back(a.position);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) seeds.push_back(0.5 * (atoms[i].position + atoms[j].position));

  struct Outcome {
    bool ok = false;
    Vec3 x;
    std::string why;
  };
  std::vector<Outcome> outcomes(seeds.size());
  const auto n_seeds = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t si = 0; si < n_seeds; ++si) {
    Outcome& out = outcomes[static_cast<std::size_t>(si)];
    Vec3 x = seeds[static_cast<std::size_t>(si)];
    for (int it = 0; it <= opt.max_newton_iter; ++it) {
      const DensityPoint d = density_at(gamma, bundle, x);
      if (!d.gradient.allFinite() || !d.hessian.allFinite()) break;
      if (d.gradient.norm() < opt.grad_tol) {
        if (d.rho < opt.min_density) {
          out.why = "converged in near-vacuum (rho " + std::to_string(d.rho) + ")";
        } else {
          out.ok = true;
          out.x = x;
        }
        break;
      }
      if (it == opt.max_newton_iter) break;
      // Newton step through the eigenbasis, dropping flat directions.
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(d.hessian);
      Vec3 step = Vec3::Zero();
      for (int k = 0; k < 3; ++k) {
        const double lam = es.eigenvalues()[k];
        if (std::abs(lam) < 1e-14) continue;
        const Vec3 v = es.eigenvectors().col(k);
        step -= v * (v.dot(d.gradient) / lam);
      }
      const double len = step.norm();
      if (len > opt.max_step) step *= opt.max_step / len;
      x += step;
    }
    if (!out.ok && out.why.empty()) out.why = "Newton did not converge";
  }

  CpSearch res;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const Outcome& o = outcomes[s];
    if (!o.ok) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "seed %zu at (%.6f, %.6f, %.6f): %s", s, seeds[s][0], seeds[s][1], seeds[s][2],
                    o.why.c_str());
      res.skipped.emplace_back(buf);
      continue;
    }
    const bool dup = std::any_of(res.points.begin(), res.points.end(), [&](const CriticalPoint& c) {
      return (c.position - o.x).norm() < opt.dedup_distance;
    });
    if (dup) continue;
    const DensityPoint d = density_at(gamma, bundle, o.x);
    CriticalPoint cp;
    cp.position = o.x;
    cp.rho = d.rho;
    cp.laplacian = d.laplacian;
    cp.gradient_norm = d.gradient.norm();
    cp.eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(d.hessian, Eigen::EigenvaluesOnly).eigenvalues();
    for (int k = 0; k < 3; ++k) {
      if (std::abs(cp.eigenvalues[k]) < opt.degeneracy) continue;
      ++cp.rank;
      cp.signature += cp.eigenvalues[k] > 0 ? 1 : -1;
    }
    if (cp.rank < 3) cp.kind = CpKind::Degenerate;
    else if (cp.signature == -3) cp.kind = CpKind::NCP;
    else if (cp.signature == -1) cp.kind = CpKind::BCP;
    else if (cp.signature == 1) cp.kind = CpKind::RCP;
    else cp.kind = CpKind::CCP;
    std::vector<int> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return (atoms[static_cast<std::size_t>(a)].position - o.x).norm() <
             (atoms[static_cast<std::size_t>(b)].position - o.x).norm();
    });
    const std::size_t keep = cp.kind == CpKind::NCP ? 1 : std::min<std::size_t>(2, order.size());
    cp.nearest_atoms.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
    res.points.push_back(cp);
  }
  return res;
}

double electrostatic_potential(const MoleculeBundle& bundle, const Vec3& r, const CubeGrid& density) {
  const double vn = nuclear_potential(bundle, r);
  check_coverage(bundle, density);
  const auto v = kernels::serial::esp_electronic(grid_points(density), density.values, density.voxel_volume(),
                                                 0.5 * min_spacing(density), {r});
  return vn - v[0];
}

CubeGrid esp_cube(const MoleculeBundle& bundle, const CubeGrid& density) {
  check_coverage(bundle, density);
  const auto cells = grid_points(density);
  std::vector<Vec3> targets;
  targets.reserve(cells.size());
  for (const auto& p : cells) targets.push_back(clamp_from_nuclei(bundle, p));
  const auto ve = kernels::parallel::esp_electronic(cells, density.values, density.voxel_volume(),
                                                    0.5 * min_spacing(density), targets);
  CubeGrid out = density;
  for (std::size_t i = 0; i < targets.size(); ++i) out.values[i] = nuclear_potential(bundle, targets[i]) - ve[i];
  return out;
}

CubeGrid esp_cube(const RDM1& gamma, const MoleculeBundle& bundle, double spacing, double padding) {
  return esp_cube(bundle, density_cube(gamma, bundle, spacing, padding));
}

Vec3 center_of_nuclear_charge(const std::vector<Atom>& atoms) {
  Vec3 c = Vec3::Zero();
  double z = 0.0;
  for (const auto& a : atoms) {
    c += a.Z * a.position;
    z += a.Z;
  }
  if (z <= 0) throw std::invalid_argument("center_of_nuclear_charge: no nuclear charge");
  return c / z;
}

DipoleResult dipole_moment(const RDM1& gamma, const MoleculeBundle& bundle, const std::optional<Vec3>& origin) {
  require_ao(gamma, bundle, "dipole_moment");
  const auto ints = dipole_integrals(bundle);
  DipoleResult out;
  out.origin = origin ? *origin : center_of_nuclear_charge(bundle.atoms);
  const double n_el = gamma.matrix.cwiseProduct(bundle.overlap).sum();
  for (int d = 0; d < 3; ++d) {
    double mu = -gamma.matrix.cwiseProduct(ints[static_cast<std::size_t>(d)]).sum() + out.origin[d] * n_el;
    for (const auto& a : bundle.atoms) mu += a.Z * (a.position[d] - out.origin[d]);
    out.au[d] = mu;
  }
  out.debye = kAuToDebye * out.au;
  out.magnitude_debye = out.debye.norm();
  return out;
}

MullikenReport mulliken(const RDM1& gamma, const MoleculeBundle& bundle) {
  require_ao(gamma, bundle, "mulliken");
  MullikenReport r;
  r.ao_populations = (gamma.matrix * bundle.overlap).diagonal();
  r.atom_populations.assign(bundle.atoms.size(), 0.0);
  const auto owner = bundle.ao_atoms();
  for (Eigen::Index m = 0; m < r.ao_populations.size(); ++m)
    r.atom_populations[static_cast<std::size_t>(owner[static_cast<std::size_t>(m)])] += r.ao_populations[m];
  for (std::size_t a = 0; a < bundle.atoms.size(); ++a) {
    r.charges.push_back(bundle.atoms[a].Z - r.atom_populations[a]);
    r.total_population += r.atom_populations[a];
    r.total_charge += r.charges.back();
  }
  return r;
}

std::string format_critical_points(const CpSearch& s, const MoleculeBundle& b) {
  std::string out = "# kind  label          x            y            z            rho          lap          l1           l2           l3\n";
  char buf[256];
  for (const auto& cp : s.points) {
    std::string label;
    if (cp.kind == CpKind::NCP) {
      label = atom_label(b, cp.nearest_atoms[0]);
    } else {
      for (std::size_t k = 0; k < cp.nearest_atoms.size(); ++k) label += (k ? "-" : "") + atom_label(b, cp.nearest_atoms[k]);
    }
    std::snprintf(buf, sizeof buf, "%-5s %-8s %12.6f %12.6f %12.6f %12.5E %12.5E %12.5E %12.5E %12.5E\n",
                  to_string(cp.kind).c_str(), label.c_str(), cp.position[0], cp.position[1], cp.position[2], cp.rho,
                  cp.laplacian, cp.eigenvalues[0], cp.eigenvalues[1], cp.eigenvalues[2]);
    out += buf;
  }
  for (const auto& line : s.skipped) out += "# skipped " + line + "\n";
  return out;
}

std::string format_mulliken(const MullikenReport& r, const MoleculeBundle& b) {
  std::string out = "# atom   population     charge\n";
  char buf[128];
  for (std::size_t a = 0; a < b.atoms.size(); ++a) {
    std::snprintf(buf, sizeof buf, "%-6s %12.8f %12.8f\n", atom_label(b, static_cast<int>(a)).c_str(),
                  r.atom_populations[a], r.charges[a]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "total  %12.8f %12.8f\n", r.total_population, r.total_charge);
  out += buf;
  return out;
}

std::string format_dipole(const DipoleResult& d) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "# origin (bohr) %.8f %.8f %.8f\n"
                "dipole_au %.10f %.10f %.10f\n"
                "dipole_debye %.10f %.10f %.10f\n"
                "magnitude_debye %.10f\n",
                d.origin[0], d.origin[1], d.origin[2], d.au[0], d.au[1], d.au[2], d.debye[0], d.debye[1], d.debye[2],
                d.magnitude_debye);
  return buf;
}

}  // namespace rdmvqe
