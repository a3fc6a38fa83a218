// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <rdmvqe/chemio.hpp>
#include <rdmvqe/error.hpp>
#include <rdmvqe/fermion.hpp>

#include <catch_amalgamated.hpp>

using namespace rdmvqe;
using Catch::Matchers::ContainsSubstring;

namespace {

void require_same_bundle(const MoleculeBundle& a, const MoleculeBundle& b) {
  REQUIRE(a.atoms.size() == b.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    REQUIRE(a.atoms[i].symbol == b.atoms[i].symbol);
    REQUIRE(a.atoms[i].Z == b.atoms[i].Z);
    REQUIRE(a.atoms[i].position == b.atoms[i].position);
  }
  REQUIRE(a.charge == b.charge);
  REQUIRE(a.n_electrons == b.n_electrons);
  REQUIRE(a.shells.size() == b.shells.size());
  for (std::size_t s = 0; s < a.shells.size(); ++s) {
    REQUIRE(a.shells[s].l() == b.shells[s].l());
    REQUIRE(a.shells[s].exponents() == b.shells[s].exponents());
    REQUIRE(a.shells[s].contraction() == b.shells[s].contraction());
  }
  REQUIRE(a.overlap == b.overlap);
  REQUIRE(a.core_h == b.core_h);
  REQUIRE(a.eri.packed() == b.eri.packed());
  REQUIRE(a.mo_coeff == b.mo_coeff);
  REQUIRE(a.mo_energies == b.mo_energies);
  REQUIRE(a.e_nuc == b.e_nuc);
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("bundle round trip is exact for a hydrogen bundle", "[chemio]") {
  const MoleculeBundle b = testsupport::h2_bundle();
  const std::string text = serialize_bundle(b);
  const MoleculeBundle c = parse_bundle_text(text);
  require_same_bundle(b, c);
  REQUIRE(serialize_bundle(c) == text);
}

TEST_CASE("bundle round trip is exact for the CH5+ p-shell fixture", "[chemio]") {
  const MoleculeBundle b = parse_bundle(testsupport::data_dir() / "ch5plus_sto3g.bundle");
  REQUIRE(b.n_ao() == 10);
  REQUIRE(b.n_electrons == 10);
  REQUIRE(b.dipole_integrals.has_value());
  int p_shells = 0;
  for (const auto& s : b.shells) p_shells += s.l() == 1;
  REQUIRE(p_shells == 1);
  const MoleculeBundle c = parse_bundle_text(serialize_bundle(b));
  require_same_bundle(b, c);
}

TEST_CASE("bundle schema errors name the field and line", "[chemio]") {
  const std::string text = serialize_bundle(testsupport::h2_bundle());
  SECTION("missing field") {
    const auto bad = replace_once(text, "\"e_nuc\"", "\"e_nuclear\"");
    REQUIRE_THROWS_WITH(parse_bundle_text(bad), ContainsSubstring("e_nuc"));
  }
  SECTION("wrong type carries a line number") {
    const auto bad = replace_once(text, "\"charge\": 0", "\"charge\": \"zero\"");
    try {
      parse_bundle_text(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(e.line() > 0);
      REQUIRE_THAT(e.what(), ContainsSubstring("charge"));
    }
  }
  SECTION("not JSON") { REQUIRE_THROWS_AS(parse_bundle_text("{ atoms: "), ParseError); }
  SECTION("missing file") { REQUIRE_THROWS_AS(parse_bundle("/nonexistent/x.bundle"), IoError); }
}

TEST_CASE("bundle validation reports named invariants", "[chemio]") {
  MoleculeBundle b = testsupport::h2_bundle();
  auto invariant_of = [](const MoleculeBundle& x) {
    try {
      validate_bundle(x);
    } catch (const ValidationError& e) {
      return e.invariant();
    }
    return std::string("none");
  };
  REQUIRE(invariant_of(b) == "none");
  SECTION("overlap") {
    b.overlap(0, 1) = b.overlap(1, 0) = 1.5;
    REQUIRE(invariant_of(b) == "overlap_spd");
  }
  SECTION("orbitals") {
    b.mo_coeff *= 1.01;
    REQUIRE(invariant_of(b) == "mo_orthonormality");
  }
  SECTION("electron count") {
    b.n_electrons = 5;
    REQUIRE(invariant_of(b) == "electron_count");
  }
  SECTION("dimensions") {
    b.core_h = Matrix::Zero(3, 3);
    REQUIRE(invariant_of(b) == "dimensions");
  }
}

TEST_CASE("FCIDUMP round trip is bit-exact", "[chemio]") {
  const MoleculeBundle b = testsupport::h4_bundle();
  const auto act = select_active_orbitals(4, 4, 4, 4);
  const FcidumpData d = to_fcidump(build_active_hamiltonian(b, act));
  const FcidumpData e = parse_fcidump_text(serialize_fcidump(d));
  REQUIRE(e.n_orb == d.n_orb);
  REQUIRE(e.n_elec == d.n_elec);
  REQUIRE(e.h == d.h);
  REQUIRE(e.eri.packed() == d.eri.packed());
  REQUIRE(e.e_core == d.e_core);
}

TEST_CASE("FCIDUMP parsing accepts Fortran exponents and rejects bad input", "[chemio]") {
  const std::string good =
      " &FCI NORB=2,NELEC=2,MS2=0,\n  ORBSYM=1,1,\n  ISYM=1,\n &END\n"
      "  0.5D+00  1  1  1  1\n  0.25D+00  2  1  1  1\n -1.0D+00  1  1  0  0\n"
      " -0.5D+00  2  2  0  0\n  0.1D+00  2  1  0  0\n  0.7D+00  0  0  0  0\n";
  const FcidumpData d = parse_fcidump_text(good);
  REQUIRE(d.n_orb == 2);
  REQUIRE(d.eri(0, 0, 0, 0) == 0.5);
  REQUIRE(d.eri(0, 0, 1, 0) == 0.25);
  REQUIRE(d.h(0, 1) == 0.1);
  REQUIRE(d.h(1, 0) == 0.1);
  REQUIRE(d.e_core == 0.7);

  REQUIRE_THROWS_AS(parse_fcidump_text(" &FCI NORB=2,NELEC=2,MS2=0,UHF=.TRUE.\n &END\n"), UnsupportedError);
  REQUIRE_THROWS_AS(parse_fcidump_text(" &FCI NORB=2,NELEC=1,MS2=1\n &END\n"), UnsupportedError);
  try {
    parse_fcidump_text(" &FCI NORB=2,NELEC=2,MS2=0\n &END\n 0.5 1 1 1 1\n 0.2 3 1 1 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line() == 4);
  }
}

TEST_CASE("cube round trip within text precision", "[chemio]") {
  CubeGrid g;
  g.origin = Vec3(-1.0, -2.0, 0.5);
  g.axes = 0.25 * Eigen::Matrix3d::Identity();
  g.counts = {3, 4, 7};
  g.values.resize(g.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = std::sin(0.37 * static_cast<double>(i)) * 1e-2;
  const std::vector<Atom> atoms = {{"H", 1, Vec3(0, 0, 0)}, {"C", 6, Vec3(0.1, 0.2, 1.3)}};
  const std::string text = serialize_cube(g, atoms, "test");
  const auto [h, at] = parse_cube_text(text);
  REQUIRE(h.counts == g.counts);
  REQUIRE((h.origin - g.origin).norm() < 1e-5);
  REQUIRE((h.axes - g.axes).norm() < 1e-5);
  REQUIRE(at.size() == 2);
  REQUIRE(at[1].symbol == "C");
  for (std::size_t i = 0; i < g.values.size(); ++i) REQUIRE(std::abs(h.values[i] - g.values[i]) <= 1e-5 * std::max(1.0, std::abs(g.values[i])));
  REQUIRE(serialize_cube(h, at, "test") == text);
}

TEST_CASE("cube parser errors", "[chemio]") {
  CubeGrid g;
  g.counts = {2, 2, 2};
  g.values.assign(8, 1.0);
  const std::string text = serialize_cube(g, {{"H", 1, Vec3::Zero()}}, "c");
  SECTION("too few values") {
    const std::string cut = text.substr(0, text.rfind("1.00000E+00"));
    REQUIRE_THROWS_AS(parse_cube_text(cut), ParseError);
  }
  SECTION("angstrom grids are converted") {
    std::string ang = text;
    // Third line onwards: axis counts become negative.
    std::size_t pos = 0;
    for (int line = 0; line < 3; ++line) pos = ang.find('\n', pos) + 1;
    for (int a = 0; a < 3; ++a) {
      const auto first = ang.find_first_not_of(' ', pos);
      ang.insert(first, "-");
      pos = ang.find('\n', pos) + 1;
    }
    const auto [h, at] = parse_cube_text(ang);
    REQUIRE(h.counts == g.counts);
    REQUIRE(std::abs(h.axes(0, 0) - g.axes(0, 0) * kAngstromToBohr) < 1e-9);
  }
}
