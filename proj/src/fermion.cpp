// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/chemio.hpp>
#include <rdmvqe/error.hpp>
#include <rdmvqe/fermion.hpp>

#include <algorithm>
#include <regex>
#include <set>
#include <stdexcept>

namespace rdmvqe {

namespace {

PauliSum jw_ladder(int q, int n_qubits, double y_sign) {
  if (q < 0 || q >= n_qubits) throw std::out_of_range("Jordan-Wigner: orbital index out of range");
  PauliString x(n_qubits), y(n_qubits);
  for (int k = 0; k < q; ++k) {
    x.set(k, 'Z');
    y.set(k, 'Z');
  }
  x.set(q, 'X');
  y.set(q, 'Y');
  PauliSum s(n_qubits);
  s.add(x, 0.5);
  s.add(y, cplx(0.0, 0.5 * y_sign));
  return s;
}

}  // namespace

PauliSum jw_annihilation(int q, int n_qubits) { return jw_ladder(q, n_qubits, +1.0); }
PauliSum jw_creation(int q, int n_qubits) { return jw_ladder(q, n_qubits, -1.0); }

PauliSum rdm1_observable(int p, int q, int n_qubits) {
  PauliSum a = jw_creation(p, n_qubits) * jw_annihilation(q, n_qubits);
  PauliSum b = jw_creation(q, n_qubits) * jw_annihilation(p, n_qubits);
  PauliSum out = (a + b) * cplx(0.5);
  out.simplify();
  return out;
}

PauliSum number_operator(int n_qubits) {
  PauliSum n = PauliSum::identity(n_qubits, 0.5 * n_qubits);
  for (int q = 0; q < n_qubits; ++q) n.add(PauliString::single(n_qubits, q, 'Z'), -0.5);
  return n;
}

PauliSum spin_number_operator(int n_qubits, int spin) {
  PauliSum n(n_qubits);
  for (int k = 0; spin_orbital(k, spin) < n_qubits; ++k) {
    n.add(PauliString(n_qubits), 0.5);
    n.add(PauliString::single(n_qubits, spin_orbital(k, spin), 'Z'), -0.5);
  }
  return n;
}

MoIntegrals mo_integrals(const MoleculeBundle& b) {
  if (b.mo_coeff.size() == 0) throw std::invalid_argument("mo_integrals: bundle has no MO coefficients");
  const Matrix& c = b.mo_coeff;
  const auto nao = static_cast<std::size_t>(c.rows());
  const auto nmo = static_cast<std::size_t>(c.cols());
  MoIntegrals out;
  out.h = c.transpose() * b.core_h * c;
  out.e_nuc = b.e_nuc;
  out.n_electrons = b.n_electrons;

  // Quarter transformations over a dense scratch tensor.
  auto idx = [](std::size_t n1, std::size_t n2, std::size_t n3, std::size_t i, std::size_t j,
                std::size_t k, std::size_t l) { return ((i * n1 + j) * n2 + k) * n3 + l; };
  std::vector<double> t0(nao * nao * nao * nao);
  for (std::size_t p = 0; p < nao; ++p)
    for (std::size_t q = 0; q < nao; ++q)
      for (std::size_t r = 0; r < nao; ++r)
        for (std::size_t s = 0; s < nao; ++s) t0[idx(nao, nao, nao, p, q, r, s)] = b.eri(p, q, r, s);

  std::vector<double> t1(nmo * nao * nao * nao, 0.0);
  for (std::size_t i = 0; i < nmo; ++i)
    for (std::size_t p = 0; p < nao; ++p) {
      const double cpi = c(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i));
      for (std::size_t rest = 0; rest < nao * nao * nao; ++rest) t1[i * nao * nao * nao + rest] += cpi * t0[p * nao * nao * nao + rest];
    }
  std::vector<double> t2(nmo * nmo * nao * nao, 0.0);
  for (std::size_t i = 0; i < nmo; ++i)
    for (std::size_t j = 0; j < nmo; ++j)
      for (std::size_t q = 0; q < nao; ++q) {
        const double cqj = c(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j));
        for (std::size_t rs = 0; rs < nao * nao; ++rs)
          t2[(i * nmo + j) * nao * nao + rs] += cqj * t1[(i * nao + q) * nao * nao + rs];
      }
  std::vector<double> t3(nmo * nmo * nmo * nao, 0.0);
  for (std::size_t ij = 0; ij < nmo * nmo; ++ij)
    for (std::size_t k = 0; k < nmo; ++k)
      for (std::size_t r = 0; r < nao; ++r) {
        const double crk = c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
        for (std::size_t s = 0; s < nao; ++s)
          t3[(ij * nmo + k) * nao + s] += crk * t2[(ij * nao + r) * nao + s];
      }
  out.eri = EriTensor(nmo);
  for (std::size_t i = 0; i < nmo; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k <= i; ++k)
        for (std::size_t l = 0; l <= (k == i ? j : k); ++l) {
          double v = 0.0;
          for (std::size_t s = 0; s < nao; ++s)
            v += c(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(l)) *
                 t3[((i * nmo + j) * nmo + k) * nao + s];
          out.eri.at(i, j, k, l) = v;
        }
  return out;
}

MoIntegrals mo_integrals(const FcidumpData& f) {
  MoIntegrals out;
  out.h = f.h;
  out.eri = f.eri;
  out.e_nuc = f.e_core;
  out.n_electrons = f.n_elec;
  return out;
}

std::pair<int, int> parse_active_space(const std::string& spec) {
  static const std::regex re(R"(^\s*\(?\s*(\d+)\s*,\s*(\d+)\s*\)?\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, re))
    throw std::invalid_argument("active space must look like \"(n_e,n_o)\", got \"" + spec + "\"");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

std::vector<int> select_active_orbitals(int n_electrons, int n_mo, int n_active_elec, int n_active_orb) {
  if (n_active_elec < 0 || n_active_orb <= 0)
    throw std::invalid_argument("active space needs n_o > 0 and n_e >= 0");
  if (n_active_elec > n_electrons || (n_electrons - n_active_elec) % 2 != 0)
    throw std::invalid_argument("active electron count incompatible with closed-shell core");
  if (n_active_elec > 2 * n_active_orb) throw std::invalid_argument("more active electrons than spin orbitals");
  const int n_core = (n_electrons - n_active_elec) / 2;
  if (n_core + n_active_orb > n_mo) throw std::invalid_argument("active space exceeds the MO count");
  std::vector<int> active(static_cast<std::size_t>(n_active_orb));
  for (int k = 0; k < n_active_orb; ++k) active[static_cast<std::size_t>(k)] = n_core + k;
  return active;
}

ActiveSpaceHamiltonian build_active_hamiltonian(const MoIntegrals& ints, const std::vector<int>& active,
                                                const std::optional<std::vector<int>>& frozen_in) {
  const int nmo = static_cast<int>(ints.n_mo());
  const int n_occ = ints.n_electrons / 2;
  if (active.empty()) throw std::invalid_argument("active space is empty");
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (active[k] < 0 || active[k] >= nmo)
      throw std::out_of_range("active orbital " + std::to_string(active[k]) + " outside [0, " +
                              std::to_string(nmo) + ")");
    if (k > 0 && active[k] <= active[k - 1])
      throw std::invalid_argument("active orbital indices must be distinct and sorted");
  }
  std::vector<int> frozen;
  if (frozen_in) {
    frozen = *frozen_in;
    std::set<int> seen;
    for (int f : frozen) {
      if (f < 0 || f >= nmo) throw std::out_of_range("frozen orbital out of range");
      if (f >= n_occ)
        throw std::invalid_argument("orbital " + std::to_string(f) + " is virtual and cannot be frozen occupied");
      if (std::find(active.begin(), active.end(), f) != active.end())
        throw std::invalid_argument("orbital " + std::to_string(f) + " is both frozen and active");
      if (!seen.insert(f).second) throw std::invalid_argument("duplicate frozen orbital");
    }
  } else {
    for (int i = 0; i < n_occ; ++i)
      if (std::find(active.begin(), active.end(), i) == active.end()) frozen.push_back(i);
  }

  ActiveSpaceHamiltonian ham;
  ham.active = active;
  ham.frozen = frozen;
  ham.n_active_orb = static_cast<int>(active.size());
  ham.n_active_elec = ints.n_electrons - 2 * static_cast<int>(frozen.size());
  if (ham.n_active_elec < 0 || ham.n_active_elec > 2 * ham.n_active_orb)
    throw std::invalid_argument("active space cannot hold " + std::to_string(ham.n_active_elec) + " electrons");

  const auto& g = ints.eri;
  const auto na = active.size();
  ham.h_eff = Matrix(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(na));
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b) {
      const auto p = static_cast<std::size_t>(active[a]);
      const auto q = static_cast<std::size_t>(active[b]);
      double v = ints.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      for (int fi : frozen) {
        const auto i = static_cast<std::size_t>(fi);
        v += 2.0 * g(p, q, i, i) - g(p, i, i, q);
      }
      ham.h_eff(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    }
  ham.h_eff = (0.5 * (ham.h_eff + ham.h_eff.transpose())).eval();
  ham.e_core = ints.e_nuc;
  for (int fi : frozen) {
    const auto i = static_cast<std::size_t>(fi);
    ham.e_core += 2.0 * ints.h(fi, fi);
    for (int fj : frozen) {
      const auto j = static_cast<std::size_t>(fj);
      ham.e_core += 2.0 * g(i, i, j, j) - g(i, j, j, i);
    }
  }
  ham.eri_act = EriTensor(na);
  for (std::size_t p = 0; p < na; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= (r == p ? q : r); ++s)
          ham.eri_act.at(p, q, r, s) = g(static_cast<std::size_t>(active[p]), static_cast<std::size_t>(active[q]),
                                         static_cast<std::size_t>(active[r]), static_cast<std::size_t>(active[s]));
  return ham;
}

ActiveSpaceHamiltonian build_active_hamiltonian(const MoleculeBundle& bundle, const std::vector<int>& active) {
  return build_active_hamiltonian(mo_integrals(bundle), active);
}

FcidumpData to_fcidump(const ActiveSpaceHamiltonian& ham) {
  FcidumpData f;
  f.n_orb = static_cast<std::size_t>(ham.n_active_orb);
  f.n_elec = ham.n_active_elec;
  f.ms2 = 0;
  f.h = ham.h_eff;
  f.eri = ham.eri_act;
  f.e_core = ham.e_core;
  return f;
}

PauliSum hamiltonian_to_pauli(const ActiveSpaceHamiltonian& ham) {
  const int n_orb = ham.n_active_orb;
  const int nq = ham.n_qubits();
  std::vector<PauliSum> cre, ann;
  for (int q = 0; q < nq; ++q) {
    cre.push_back(jw_creation(q, nq));
    ann.push_back(jw_annihilation(q, nq));
  }
  // a+_P a_Q for every spin-orbital pair, reused by both terms.
  std::vector<PauliSum> hop(static_cast<std::size_t>(nq * nq));
  for (int p = 0; p < nq; ++p)
    for (int q = 0; q < nq; ++q) hop[static_cast<std::size_t>(p * nq + q)] = cre[p] * ann[q];

  PauliSum h = PauliSum::identity(nq, ham.e_core);
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q < n_orb; ++q) {
      const double v = ham.h_eff(p, q);
      if (v == 0.0) continue;
      for (int s = 0; s < 2; ++s)
        h += hop[static_cast<std::size_t>(spin_orbital(p, s) * nq + spin_orbital(q, s))] * cplx(v);
    }
  // 1/2 sum (pq|rs) a+_{p s1} a+_{r s2} a_{s s2} a_{q s1}
  //   = 1/2 sum (pq|rs) [a+_P a_Q a+_R a_S - delta_QR a+_P a_S]
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q < n_orb; ++q)
      for (int r = 0; r < n_orb; ++r)
        for (int s = 0; s < n_orb; ++s) {
          const double v = ham.eri_act(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                                       static_cast<std::size_t>(r), static_cast<std::size_t>(s));
          if (v == 0.0) continue;
          for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
              const int P = spin_orbital(p, s1), Q = spin_orbital(q, s1);
              const int R = spin_orbital(r, s2), S = spin_orbital(s, s2);
              PauliSum term = hop[static_cast<std::size_t>(P * nq + Q)] * hop[static_cast<std::size_t>(R * nq + S)];
              if (Q == R) term += hop[static_cast<std::size_t>(P * nq + S)] * cplx(-1.0);
              h += term * cplx(0.5 * v);
            }
        }
  h.simplify();
  return h;
}

}  // namespace rdmvqe
