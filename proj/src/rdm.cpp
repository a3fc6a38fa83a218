// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/error.hpp>
#include <rdmvqe/fermion.hpp>
#include <rdmvqe/rdm.hpp>

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rdmvqe {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kTraceTol = 1e-8;
constexpr double kEigenTol = 1e-8;

}  // namespace

Rdm1Meter::Rdm1Meter(int n_spatial) : n_(n_spatial) {
  if (n_spatial < 1) throw std::invalid_argument("Rdm1Meter: n_spatial must be positive");
  const int nq = 2 * n_spatial;
  for (int p = 0; p < n_; ++p)
    for (int q = p; q < n_; ++q) {
      PauliSum o = rdm1_observable(spin_orbital(p, 0), spin_orbital(q, 0), nq) +
                   rdm1_observable(spin_orbital(p, 1), spin_orbital(q, 1), nq);
      o.simplify();
      obs_.push_back(kernels::compile(o));
    }
}

RDM1 Rdm1Meter::measure(const Statevector& state) const {
  if (state.n_qubits() != 2 * n_)
    throw std::invalid_argument("measure_rdm1: state has " + std::to_string(state.n_qubits()) + " qubits, expected " +
                                std::to_string(2 * n_));
  RDM1 r;
  r.matrix = Matrix::Zero(n_, n_);
  std::size_t k = 0;
  for (int p = 0; p < n_; ++p)
    for (int q = p; q < n_; ++q) {
      const double v = expectation(state, obs_[k++]);
      r.matrix(p, q) = v;
      r.matrix(q, p) = v;
    }
  return r;
}

RDM1 measure_rdm1(const Statevector& state, int n_spatial_active) {
  RDM1 r = Rdm1Meter(n_spatial_active).measure(state);
  validate_rdm1(r);
  return r;
}

RDM1 hf_rdm1(int n_mo, int n_electrons) {
  if (n_electrons % 2 != 0 || n_electrons < 0 || n_electrons > 2 * n_mo)
    throw std::invalid_argument("hf_rdm1: needs an even electron count that fits the orbitals");
  RDM1 r;
  r.matrix = Matrix::Zero(n_mo, n_mo);
  for (int i = 0; i < n_electrons / 2; ++i) r.matrix(i, i) = 2.0;
  return r;
}

RDM1 merge_with_hf(const RDM1& act, const RDM1& hf, const std::vector<int>& active) {
  if (act.basis != RdmBasis::MO || hf.basis != RdmBasis::MO)
    throw std::invalid_argument("merge_with_hf: both matrices must be in the MO basis");
  if (act.dim() != static_cast<Eigen::Index>(active.size()))
    throw std::invalid_argument("merge_with_hf: active RDM dimension differs from the active index count");
  std::set<int> seen;
  for (int a : active) {
    if (a < 0 || a >= hf.dim()) throw std::out_of_range("merge_with_hf: active index " + std::to_string(a) + " out of range");
    if (!seen.insert(a).second) throw std::invalid_argument("merge_with_hf: repeated active index");
  }
  RDM1 out = hf;
  out.offset = 0;
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = 0; j < active.size(); ++j)
      out.matrix(active[i], active[j]) = act.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  validate_rdm1(out);
  return out;
}

RDM1 mo_to_ao(const RDM1& rdm, const Matrix& c) {
  if (rdm.basis != RdmBasis::MO) throw std::invalid_argument("mo_to_ao: input must be in the MO basis");
  if (c.cols() != rdm.dim())
    throw std::invalid_argument("mo_to_ao: MO coefficient matrix has " + std::to_string(c.cols()) +
                                " columns, RDM has dimension " + std::to_string(rdm.dim()));
  RDM1 out;
  out.basis = RdmBasis::AO;
  out.matrix = c * rdm.matrix * c.transpose();
  validate_rdm1(out);
  return out;
}

void validate_rdm1(const RDM1& r, std::optional<double> expected_trace) {
  if (r.matrix.rows() != r.matrix.cols()) throw ValidationError("rdm_shape", "matrix is not square");
  const double asym = (r.matrix - r.matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) throw ValidationError("rdm_symmetry", "max asymmetry " + std::to_string(asym));
  if (expected_trace && std::abs(r.matrix.trace() - *expected_trace) > kTraceTol)
    throw ValidationError("rdm_trace", "trace " + std::to_string(r.matrix.trace()) + " != " +
                                           std::to_string(*expected_trace));
  if (r.basis == RdmBasis::MO) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.matrix, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (lo < -kEigenTol || hi > 2.0 + kEigenTol)
      throw ValidationError("rdm_eigenvalues", "eigenvalues span [" + std::to_string(lo) + ", " +
                                                   std::to_string(hi) + "]");
  }
}

std::string serialize_rdm1(const RDM1& r, const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += (r.basis == RdmBasis::MO ? "MO " : "AO ") + std::to_string(r.dim()) + " " + std::to_string(r.offset) + "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < r.dim(); ++i) {
    for (Eigen::Index j = 0; j < r.dim(); ++j) {
      std::snprintf(buf, sizeof buf, j ? " %.17e" : "%.17e", r.matrix(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

RDM1 parse_rdm1(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  RDM1 r;
  Eigen::Index n = -1, row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string basis;
      long dim = 0;
      if (!(ls >> basis >> dim) || (basis != "MO" && basis != "AO") || dim <= 0)
        throw ParseError("RDM header must be '<MO|AO> <dimension> [offset]'", lineno);
      ls >> r.offset;
      r.basis = basis == "MO" ? RdmBasis::MO : RdmBasis::AO;
      n = dim;
      r.matrix = Matrix::Zero(n, n);
      continue;
    }
    if (row >= n) throw ParseError("RDM has more rows than its dimension", lineno);
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(ls >> r.matrix(row, j))) throw ParseError("RDM row has fewer than " + std::to_string(n) + " values", lineno);
    std::string extra;
    if (ls >> extra) throw ParseError("RDM row has more than " + std::to_string(n) + " values", lineno);
    ++row;
  }
  if (n < 0) throw ParseError("RDM file has no header", lineno);
  if (row != n) throw ParseError("RDM has " + std::to_string(row) + " rows, expected " + std::to_string(n), lineno);
  return r;
}

}  // namespace rdmvqe
