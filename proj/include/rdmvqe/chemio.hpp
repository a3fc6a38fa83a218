// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <rdmvqe/types.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace rdmvqe {

/// Reads a JSON molecule bundle and checks every bundle invariant.
/// Throws ParseError (schema problems, with the line of the offending key)
/// or ValidationError (invariant names: "overlap_spd", "electron_count",
/// "mo_orthonormality", "dimensions", ...).
MoleculeBundle parse_bundle(const std::filesystem::path& path);
MoleculeBundle parse_bundle_text(const std::string& text);

/// Throws the same ValidationError set as parse_bundle.
void validate_bundle(const MoleculeBundle& bundle);

std::string serialize_bundle(const MoleculeBundle& bundle);
void write_bundle(const MoleculeBundle& bundle, const std::filesystem::path& path);

/// Spatial-orbital integrals as carried by an FCIDUMP file.
struct FcidumpData {
  std::size_t n_orb = 0;
  int n_elec = 0;
  int ms2 = 0;
  Matrix h;             // MO x MO
  EriTensor eri;        // MO^4, chemists' notation
  double e_core = 0.0;
};

FcidumpData parse_fcidump(const std::filesystem::path& path);
FcidumpData parse_fcidump_text(const std::string& text);
/// Values are printed with round-trip precision, so parsing the output
/// reproduces every tensor bit-for-bit.
std::string serialize_fcidump(const FcidumpData& data, double threshold = 0.0);
void write_fcidump(const FcidumpData& data, const std::filesystem::path& path);

/// Gaussian cube output: two comment lines, natoms + origin, three axis
/// lines, atom lines, then six %13.5E values per line with a line break
/// after every z row.
void write_cube(const CubeGrid& grid, const std::vector<Atom>& atoms,
                const std::filesystem::path& path, const std::string& comment = "");
std::string serialize_cube(const CubeGrid& grid, const std::vector<Atom>& atoms,
                           const std::string& comment = "");

std::pair<CubeGrid, std::vector<Atom>> read_cube(const std::filesystem::path& path);
std::pair<CubeGrid, std::vector<Atom>> parse_cube_text(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rdmvqe
