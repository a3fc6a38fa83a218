// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/pauli.hpp>

#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rdmvqe {

namespace {

int code(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }  // I X Y Z -> 0 1 2 3

// i^k for k mod 4
cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits)
    throw std::invalid_argument("PauliString: qubit count out of range");
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (int q = 0; q < p.n_; ++q) p.set(q, letters[static_cast<std::size_t>(q)]);
  return p;
}

PauliString PauliString::single(int n_qubits, int q, char letter) {
  PauliString p(n_qubits);
  p.set(q, letter);
  return p;
}

char PauliString::letter(int q) const {
  return "IXYZ"[code(x_ & bit(q), z_ & bit(q))];
}

void PauliString::set(int q, char letter) {
  if (q < 0 || q >= n_) throw std::out_of_range("PauliString: qubit index out of range");
  const auto b = bit(q);
  x_ &= ~b;
  z_ &= ~b;
  switch (letter) {
    case 'I': break;
    case 'X': x_ |= b; break;
    case 'Y': x_ |= b; z_ |= b; break;
    case 'Z': z_ |= b; break;
    default: throw std::invalid_argument(std::string("PauliString: invalid letter '") + letter + "'");
  }
}

std::string PauliString::letters() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

bool PauliString::operator<(const PauliString& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (int q = 0; q < n_; ++q) {
    const int a = code(x_ & bit(q), z_ & bit(q));
    const int b = code(o.x_ & o.bit(q), o.z_ & o.bit(q));
    if (a != b) return a < b;
  }
  return false;
}

std::pair<PauliString, cplx> pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("pauli_mul: qubit count mismatch");
  // Per qubit: with sigma = i^{xz} X^x Z^z, X^x1 Z^z1 X^x2 Z^z2 = (-1)^{z1 x2} X^{x1^x2} Z^{z1^z2}.
  const std::uint32_t x = a.x() ^ b.x();
  const std::uint32_t z = a.z() ^ b.z();
  int k = a.y_count() + b.y_count() + 2 * std::popcount(a.z() & b.x()) - std::popcount(x & z);
  PauliString out(a.n_qubits());
  for (int q = 0; q < a.n_qubits(); ++q) {
    const std::uint32_t bq = 1u << (a.n_qubits() - 1 - q);
    out.set(q, "IXYZ"[code(x & bq, z & bq)]);
  }
  return {out, ipow(k)};
}

PauliSum PauliSum::identity(int n_qubits, cplx coeff) {
  PauliSum s(n_qubits);
  s.add(PauliString(n_qubits), coeff);
  return s;
}

cplx PauliSum::coefficient(const PauliString& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? cplx{0, 0} : it->second;
}

void PauliSum::add(const PauliString& p, cplx coeff) {
  if (p.n_qubits() != n_) throw std::invalid_argument("PauliSum::add: qubit count mismatch");
  terms_[p] += coeff;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  if (o.n_ != n_) throw std::invalid_argument("PauliSum: qubit count mismatch");
  for (const auto& [p, c] : o.terms_) terms_[p] += c;
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("PauliSum: qubit count mismatch");
  PauliSum out(a.n_);
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) {
      auto [p, phase] = pauli_mul(pa, pb);
      out.terms_[p] += ca * cb * phase;
    }
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) out.terms_[p] = std::conj(c);
  return out;
}

PauliSum& PauliSum::simplify() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneTol; });
  return *this;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [p, c] : terms_)
    if (std::abs(c.imag()) >= tol) return false;
  return true;
}

std::string PauliSum::dump() const {
  std::string out;
  char buf[96];
  for (const auto& [p, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%+.17e %+.17e ", c.real(), c.imag());
    out += buf;
    out += p.letters();
    out += '\n';
  }
  return out;
}

PauliSum PauliSum::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PauliSum out;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double re, im;
    std::string letters;
    if (!(ls >> re >> im >> letters)) throw std::invalid_argument("PauliSum::parse: bad line '" + line + "'");
    auto p = PauliString::from_letters(letters);
    if (first) {
      out = PauliSum(p.n_qubits());
      first = false;
    }
    out.add(p, {re, im});
  }
  return out;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const cplx iy = ipow(p.y_count());
  for (std::size_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(static_cast<std::uint32_t>(b) & p.z()) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ p.x()), static_cast<Eigen::Index>(b)) = iy * sign;
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& sum) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << sum.n_qubits());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : sum.terms()) m += c * dense_matrix(p);
  return m;
}

}  // namespace rdmvqe
