// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <rdmvqe/chemio.hpp>
#include <rdmvqe/cli.hpp>
#include <rdmvqe/rdm.hpp>

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace rdmvqe;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rdmvqe_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path h2_bundle_file(const fs::path& dir) {
  const fs::path p = dir / "h2.json";
  const auto r = cli({"build-h", "--geometry", "H 0 0 0; H 0 0 1.4", "-o", p.string()});
  REQUIRE(r.code == kExitOk);
  return p;
}

}  // namespace

TEST_CASE("version header", "[cli]") {
  REQUIRE(version_string() == "0.1.0");
  REQUIRE(artifact_header({"vqe", "x.json"}) == "rdmvqe 0.1.0 flags: vqe x.json");
}

TEST_CASE("geometry parsing", "[cli]") {
  const auto atoms = parse_geometry("H 0 0 0; H 0 0 1.0\nHe 1 2 3", 2.0);
  REQUIRE(atoms.size() == 3);
  REQUIRE(atoms[1].position.z() == 2.0);
  REQUIRE(atoms[2].Z == 2);
  REQUIRE_THROWS(parse_geometry("H 0 0", 1.0));
  REQUIRE_THROWS(parse_geometry("Xx 0 0 0", 1.0));
}

TEST_CASE("seeded initial parameters are reproducible and bounded", "[cli]") {
  const Vector a = initial_parameters(20, 42), b = initial_parameters(20, 42);
  REQUIRE(a == b);
  REQUIRE(a.cwiseAbs().maxCoeff() <= 0.1);
  REQUIRE(initial_parameters(5, std::nullopt) == Vector::Zero(5));
  REQUIRE(initial_parameters(20, 43) != a);
}

TEST_CASE("input errors exit with code 1", "[cli]") {
  const auto dir = scratch("errors");
  REQUIRE(cli({"scf", (dir / "missing.json").string()}).code == kExitInput);
  REQUIRE(cli({"frobnicate"}).code == kExitInput);
  const auto b = h2_bundle_file(dir);
  const auto bad_active = cli({"vqe", b.string(), "--active", "(2;2)"});
  REQUIRE(bad_active.code == kExitInput);
  REQUIRE_THAT(bad_active.err, Catch::Matchers::ContainsSubstring("error"));
  REQUIRE(cli({"vqe", b.string(), "--ansatz", "uccsd"}).code == kExitInput);
  write_text_file(dir / "broken.json", "{ \"atoms\": ");
  REQUIRE(cli({"scf", (dir / "broken.json").string()}).code == kExitInput);
}

TEST_CASE("non-convergence exits with code 2", "[cli]") {
  const auto dir = scratch("noconv");
  const auto b = h2_bundle_file(dir);
  REQUIRE(cli({"vqe", b.string(), "--max-iter-phase1", "2"}).code == kExitNotConverged);
}

TEST_CASE("end-to-end build, SCF, VQE and properties", "[cli]") {
  const auto dir = scratch("flow");
  const auto b = h2_bundle_file(dir);
  const auto scf = cli({"scf", b.string(), "--write-bundle", (dir / "h2_scf.json").string()});
  REQUIRE(scf.code == kExitOk);
  REQUIRE(scf.out.rfind("# rdmvqe 0.1.0 flags: scf", 0) == 0);
  REQUIRE_THAT(scf.out, Catch::Matchers::ContainsSubstring("E_RHF -1.116714325"));

  const auto vqe = cli({"vqe", (dir / "h2_scf.json").string(), "--out-dir", (dir / "run").string()});
  REQUIRE(vqe.code == kExitOk);
  for (const char* f : {"trace.txt", "theta.txt", "rdm_mo.txt", "rdm_ao.txt"}) {
    REQUIRE(fs::exists(dir / "run" / f));
    REQUIRE(read_text_file(dir / "run" / f).rfind("# rdmvqe 0.1.0 flags: vqe", 0) == 0);
  }
  const RDM1 rdm = parse_rdm1(read_text_file(dir / "run" / "rdm_mo.txt"));
  REQUIRE(rdm.matrix.trace() == Catch::Approx(2.0).margin(1e-8));

  const auto props = cli({"properties", (dir / "h2_scf.json").string(), "--rdm", (dir / "run" / "rdm_mo.txt").string(),
                          "--rdm-ref", "hf", "--which", "density,dipole,mulliken,cps", "--spacing", "0.25",
                          "--padding", "3", "--out-dir", (dir / "props").string()});
  REQUIRE(props.code == kExitOk);
  REQUIRE_THAT(props.out, Catch::Matchers::ContainsSubstring("density_integral"));
  for (const char* f : {"density.cube", "density_diff.cube", "dipole.txt", "mulliken.txt", "critical_points.txt"})
    REQUIRE(fs::exists(dir / "props" / f));
  const auto [cube, atoms] = read_cube(dir / "props" / "density.cube");
  REQUIRE(atoms.size() == 2);
}

TEST_CASE("seeded runs produce byte-identical artifacts", "[cli]") {
  const auto dir = scratch("seed");
  const auto b = h2_bundle_file(dir);
  const std::vector<std::string> args = {"vqe", b.string(), "--seed", "7", "--ansatz", "gatefabric",
                                         "--e-tol", "1e-3", "--out-dir", (dir / "run").string()};
  const std::vector<std::string> files = {"trace.txt", "theta.txt", "rdm_mo.txt", "rdm_ao.txt"};
  std::vector<std::string> first;
  REQUIRE(cli(args).code == kExitOk);
  for (const auto& f : files) first.push_back(read_text_file(dir / "run" / f));
  REQUIRE(cli(args).code == kExitOk);
  for (std::size_t i = 0; i < files.size(); ++i) REQUIRE(read_text_file(dir / "run" / files[i]) == first[i]);
}

TEST_CASE("zero RDM weight leaves phase 1 unchanged", "[cli]") {
  const auto dir = scratch("wrdm");
  const auto b = h2_bundle_file(dir);
  REQUIRE(cli({"vqe", b.string(), "--ansatz", "gatefabric", "--e-tol", "1e-3", "--out-dir", (dir / "a").string()})
              .code == kExitOk);
  cli({"vqe", b.string(), "--ansatz", "gatefabric", "--e-tol", "1e-3", "--w-rdm", "0", "--out-dir",
       (dir / "b").string()});
  auto phase1 = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, keep;
    while (std::getline(in, line))
      if (line.rfind("1 ", 0) == 0) keep += line + "\n";
    return keep;
  };
  const auto a = phase1(read_text_file(dir / "a" / "trace.txt"));
  REQUIRE(!a.empty());
  REQUIRE(a == phase1(read_text_file(dir / "b" / "trace.txt")));
}

TEST_CASE("scan reports partial failure with code 3", "[cli]") {
  const auto dir = scratch("scan");
  h2_bundle_file(dir);
  write_text_file(dir / "scan.json", R"({"geometries": [{"label": "ok", "bundle": "h2.json"},
                                                         {"label": "bad", "bundle": "nope.json"}],
                                        "vqe": {"ansatz": "kupccgsd", "e_tol": 1e-6}})");
  const auto r = cli({"scan", (dir / "scan.json").string()});
  REQUIRE(r.code == kExitPartialScan);
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("bad  FAILED"));
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("\nok  -1.137"));
  write_text_file(dir / "scan_ok.json", R"({"geometries": [{"label": "ok", "bundle": "h2.json"}]})");
  REQUIRE(cli({"scan", (dir / "scan_ok.json").string()}).code == kExitOk);
  write_text_file(dir / "scan_bad.json", R"({"geometries": [], "vqe": {"colour": 1}})");
  REQUIRE(cli({"scan", (dir / "scan_bad.json").string()}).code == kExitInput);
}

TEST_CASE("FCIDUMP export", "[cli]") {
  const auto dir = scratch("fcidump");
  const auto b = h2_bundle_file(dir);
  REQUIRE(cli({"fcidump", b.string(), "--active", "(2,2)", "-o", (dir / "h2.fcidump").string()}).code == kExitOk);
  const auto d = parse_fcidump(dir / "h2.fcidump");
  REQUIRE(d.n_orb == 2);
  REQUIRE(d.n_elec == 2);
}
