// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace rdmvqe {

using cplx = std::complex<double>;

/// Phase-free tensor product of I/X/Y/Z on n <= 30 qubits.
///
/// Masks use basis-index bit order: qubit 0 is the most significant bit of a
/// computational-basis index, so applying the string to |b> touches b ^ x().
class PauliString {
 public:
  static constexpr int kMaxQubits = 30;

  PauliString() = default;
  explicit PauliString(int n_qubits);
  /// Parses e.g. "XIZY" (qubit 0 first). Throws std::invalid_argument.
  static PauliString from_letters(std::string_view letters);
  /// Single-qubit operator `letter` on qubit q, identity elsewhere.
  static PauliString single(int n_qubits, int q, char letter);

  int n_qubits() const { return n_; }
  std::uint32_t x() const { return x_; }
  std::uint32_t z() const { return z_; }
  char letter(int q) const;
  void set(int q, char letter);
  std::string letters() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  int y_count() const;

  bool operator==(const PauliString& o) const { return n_ == o.n_ && x_ == o.x_ && z_ == o.z_; }
  /// Lexicographic on the letter string with I < X < Y < Z.
  bool operator<(const PauliString& o) const;

 private:
  std::uint32_t bit(int q) const { return 1u << (n_ - 1 - q); }
  int n_ = 0;
  std::uint32_t x_ = 0;
  std::uint32_t z_ = 0;
};

/// Product of two strings: a * b = phase * result.
std::pair<PauliString, cplx> pauli_mul(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings on a fixed number of qubits.
class PauliSum {
 public:
  static constexpr double kPruneTol = 1e-14;
  using Terms = std::map<PauliString, cplx>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}
  static PauliSum identity(int n_qubits, cplx coeff = 1.0);

  int n_qubits() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  cplx coefficient(const PauliString& p) const;

  void add(const PauliString& p, cplx coeff);
  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator*=(cplx s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  PauliSum adjoint() const;
  /// Drops terms with |coeff| < kPruneTol.
  PauliSum& simplify();
  bool is_hermitian(double tol = 1e-12) const;

  /// One term per line: "<re> <im> <letters>", lexicographic order.
  std::string dump() const;
  static PauliSum parse(const std::string& text);

 private:
  int n_ = 0;
  Terms terms_;
};

/// Dense 2^n x 2^n matrix; only for small verification problems.
Eigen::MatrixXcd dense_matrix(const PauliSum& sum);
Eigen::MatrixXcd dense_matrix(const PauliString& p);

}  // namespace rdmvqe
