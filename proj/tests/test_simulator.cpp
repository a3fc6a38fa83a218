// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <rdmvqe/error.hpp>
#include <rdmvqe/fermion.hpp>
#include <rdmvqe/simulator.hpp>

#include <catch_amalgamated.hpp>
#include <unsupported/Eigen/MatrixFunctions>

using namespace rdmvqe;

namespace {

Eigen::VectorXcd as_vector(const Statevector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) v[static_cast<Eigen::Index>(i)] = s[i];
  return v;
}

Statevector from_vector(int n, const Eigen::VectorXcd& v) {
  Statevector s(n);
  for (std::size_t i = 0; i < s.dim(); ++i) s.amplitudes()[i] = v[static_cast<Eigen::Index>(i)];
  return s;
}

// Dense unitary of a gate, column by column.
Eigen::MatrixXcd gate_matrix(int n, const Gate& g) {
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) u.col(static_cast<Eigen::Index>(b)) = as_vector(apply_gate(Statevector::basis_state(n, b), g));
  return u;
}

Eigen::MatrixXcd adag_a(int p, int q, int n) { return dense_matrix(jw_creation(p, n) * jw_annihilation(q, n)); }

Statevector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return from_vector(n, v.normalized());
}

}  // namespace

TEST_CASE("Hartree-Fock reference occupies the leading qubits", "[simulator]") {
  const auto s = prepare_hf_state(6, 4);
  REQUIRE(s[0b111100] == cplx(1.0));
  REQUIRE(s.norm() == 1.0);
  REQUIRE(Statevector(3)[0] == cplx(1.0));
  REQUIRE_THROWS(Statevector(Statevector::kMaxQubits + 1));
}

TEST_CASE("single excitation on two qubits", "[simulator]") {
  const double th = 0.7, c = std::cos(th / 2), s = std::sin(th / 2);
  const auto u = gate_matrix(2, Gate::single_excitation(0, 1, th));
  Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
  expect(0, 0) = expect(3, 3) = 1.0;
  expect(1, 1) = expect(2, 2) = c;
  expect(2, 1) = s;   // |01> -> s|10>
  expect(1, 2) = -s;  // |10> -> -s|01>
  REQUIRE((u - expect).norm() < 1e-15);
}

TEST_CASE("double excitation on four qubits", "[simulator]") {
  const double th = -1.3, c = std::cos(th / 2), s = std::sin(th / 2);
  const auto u = gate_matrix(4, Gate::double_excitation(0, 1, 2, 3, th));
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(16, 16);
  expect(12, 12) = expect(3, 3) = c;
  expect(3, 12) = -s;  // |1100> -> -s|0011>
  expect(12, 3) = s;   // |0011> -> s|1100>
  REQUIRE((u - expect).norm() < 1e-15);
}

TEST_CASE("excitation gates equal exponentials of Jordan-Wigner generators", "[simulator]") {
  const int n = 6;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> q = {0, 1, 2, 3, 4, 5};
    std::shuffle(q.begin(), q.end(), rng);
    const double th = ang(rng);
    {
      const Eigen::MatrixXcd gen = adag_a(q[0], q[1], n) - adag_a(q[1], q[0], n);
      const Eigen::MatrixXcd ref = (0.5 * th * gen).exp();
      REQUIRE((gate_matrix(n, Gate::single_excitation(q[0], q[1], th)) - ref).norm() < 1e-12);
    }
    {
      const Eigen::MatrixXcd t2 = dense_matrix(jw_creation(q[3], n) * jw_creation(q[2], n) *
                                               jw_annihilation(q[1], n) * jw_annihilation(q[0], n));
      const Eigen::MatrixXcd gen = t2 - t2.adjoint();
      const Eigen::MatrixXcd ref = (0.5 * th * gen).exp();
      REQUIRE((gate_matrix(n, Gate::double_excitation(q[0], q[1], q[2], q[3], th)) - ref).norm() < 1e-12);
    }
    {
      const Eigen::MatrixXcd ref = gate_matrix(n, Gate::single_excitation(q[1], q[3], th)) *
                                   gate_matrix(n, Gate::single_excitation(q[0], q[2], th));
      REQUIRE((gate_matrix(n, Gate::orbital_rotation(q[0], q[1], q[2], q[3], th)) - ref).norm() < 1e-12);
    }
  }
}

TEST_CASE("Pauli rotations and X gates match dense matrices", "[simulator]") {
  std::mt19937_64 rng(23);
  for (const char* letters : {"XYZ", "IZI", "YYX", "ZZZ"}) {
    const auto p = PauliString::from_letters(letters);
    const double th = 0.913;
    const Eigen::MatrixXcd ref = std::cos(th / 2) * Eigen::MatrixXcd::Identity(8, 8) -
                                 cplx(0, std::sin(th / 2)) * dense_matrix(p);
    REQUIRE((gate_matrix(3, Gate::pauli_rotation(p, th)) - ref).norm() < 1e-14);
  }
  REQUIRE((gate_matrix(3, Gate::pauli_x(1)) - dense_matrix(PauliString::single(3, 1, 'X'))).norm() == 0.0);
}

TEST_CASE("long random circuits stay normalized and conserve particle number", "[simulator]") {
  const int n = 8;
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  auto s = prepare_hf_state(n, 4);
  const auto num = number_operator(n);
  const auto na = spin_number_operator(n, 0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<int> q(n);
    std::iota(q.begin(), q.end(), 0);
    std::shuffle(q.begin(), q.end(), rng);
    switch (t % 3) {
      case 0: apply_gate_inplace(s, Gate::single_excitation(q[0], q[1], ang(rng))); break;
      case 1: apply_gate_inplace(s, Gate::double_excitation(q[0], q[1], q[2], q[3], ang(rng))); break;
      default: apply_gate_inplace(s, Gate::orbital_rotation(q[0], q[1], q[2], q[3], ang(rng)));
    }
  }
  REQUIRE(std::abs(s.norm() - 1.0) < 1e-12);
  REQUIRE(expectation(s, num) == Catch::Approx(4.0).margin(1e-10));
  // Spin-preserving gate choice keeps S_z only when moves stay in one spin sector.
  auto t = prepare_hf_state(n, 4);
  for (int k = 0; k < 200; ++k) {
    apply_gate_inplace(t, Gate::single_excitation(2 * (k % 4), 2 * ((k + 1) % 4), 0.1 * k));
    apply_gate_inplace(t, Gate::double_excitation(0, 1, 6, 7, 0.03 * k));
  }
  REQUIRE(expectation(t, na) == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("expectation values agree with dense evaluation", "[simulator]") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  PauliSum h(5);
  static const char kL[] = "IXYZ";
  for (int t = 0; t < 30; ++t) {
    std::string letters;
    for (int q = 0; q < 5; ++q) letters += kL[rng() % 4];
    h.add(PauliString::from_letters(letters), g(rng));
  }
  const auto s = random_state(5, rng);
  const auto v = as_vector(s);
  const double dense = (v.adjoint() * dense_matrix(h) * v)(0, 0).real();
  REQUIRE(expectation(s, h) == Catch::Approx(dense).margin(1e-12));
  REQUIRE(expectation(s, kernels::compile(h)) == Catch::Approx(dense).margin(1e-12));
}

TEST_CASE("non-Hermitian observables are rejected", "[simulator]") {
  PauliSum a(2);
  a.add(PauliString::from_letters("XZ"), cplx(0, 1));
  std::mt19937_64 rng(1);
  REQUIRE_THROWS_AS(expectation(random_state(2, rng), a), std::invalid_argument);
}

TEST_CASE("parameterized gates read their angle from the parameter vector", "[simulator]") {
  const Gate g = Gate::single_excitation(0, 1, 0.0, 3);
  REQUIRE(g.param == 3);
  REQUIRE(g.arity() == 2);
  REQUIRE(g.name() == "SingleExcitation");
  const auto a = apply_gate(Statevector::basis_state(2, 1), Gate::single_excitation(0, 1, 0.4));
  auto b = Statevector::basis_state(2, 1);
  apply_gate_inplace(b, g, 0.4);
  REQUIRE(a.amplitudes() == b.amplitudes());
}
