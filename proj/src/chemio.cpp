// Copyright 2026 The rdmvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <rdmvqe/chemio.hpp>
#include <rdmvqe/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace rdmvqe {

using nlohmann::json;

EriTensor::EriTensor(std::size_t n) : n_(n) {
  const std::size_t npair = n * (n + 1) / 2;
  data_.assign(npair * (npair + 1) / 2, 0.0);
}

std::vector<int> MoleculeBundle::ao_atoms() const {
  std::vector<int> out;
  for (const auto& sh : shells)
    for (int k = 0; k < sh.size(); ++k) out.push_back(sh.atom());
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Bundle
// ---------------------------------------------------------------------------

namespace {

constexpr int kBundleFormatVersion = 1;

std::size_t line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n')) + 1;
}

class BundleReader {
 public:
  BundleReader(const std::string& text, const json& root) : text_(text), root_(root) {}

  const json& require(const std::string& key) const {
    if (!root_.contains(key)) throw ParseError("bundle: missing required field '" + key + "'");
    return root_.at(key);
  }
  bool has(const std::string& key) const { return root_.contains(key); }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ParseError("bundle field '" + key + "': " + what, line_of_key(text_, key));
  }

  double number(const json& j, const std::string& key) const {
    if (!j.is_number()) fail(key, "expected a number");
    return j.get<double>();
  }
  int integer(const json& j, const std::string& key) const {
    if (!j.is_number_integer()) fail(key, "expected an integer");
    return j.get<int>();
  }
  std::vector<double> vec(const json& j, const std::string& key) const {
    if (!j.is_array()) fail(key, "expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(number(v, key));
    return out;
  }
  Matrix matrix(const json& j, const std::string& key) const {
    if (!j.is_array()) fail(key, "expected an array of rows");
    if (j.empty()) return Matrix(0, 0);
    const auto rows = j.size();
    if (!j[0].is_array()) fail(key, "expected an array of rows");
    const auto cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto row = vec(j[r], key);
      if (row.size() != cols) fail(key, "ragged matrix (row " + std::to_string(r) + ")");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
  }

 private:
  const std::string& text_;
  const json& root_;
};

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void expect_square(const Matrix& m, std::size_t n, const char* name) {
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
    throw ValidationError("dimensions", std::string(name) + " must be " + std::to_string(n) +
                                            "x" + std::to_string(n));
}

}  // namespace

void validate_bundle(const MoleculeBundle& b) {
  const std::size_t n = b.n_ao();
  if (n == 0) throw ValidationError("dimensions", "bundle has no basis functions");
  std::size_t nfun = 0;
  for (const auto& sh : b.shells) {
    if (sh.atom() < 0 || static_cast<std::size_t>(sh.atom()) >= b.atoms.size())
      throw ValidationError("shell_atom", "shell refers to atom " + std::to_string(sh.atom()));
    nfun += static_cast<std::size_t>(sh.size());
  }
  if (nfun != n)
    throw ValidationError("dimensions", "basis shells carry " + std::to_string(nfun) +
                                            " functions but overlap is " + std::to_string(n) + "x" +
                                            std::to_string(n));
  expect_square(b.overlap, n, "overlap");
  expect_square(b.core_h, n, "core_h");
  if (b.eri.dim() != n) throw ValidationError("dimensions", "eri dimension differs from overlap");
  if (b.dipole_integrals)
    for (const auto& d : *b.dipole_integrals) expect_square(d, n, "dipole_integrals");

  if ((b.overlap - b.overlap.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("overlap_spd", "overlap matrix is not symmetric");
  Eigen::LLT<Matrix> llt(b.overlap);
  if (llt.info() != Eigen::Success)
    throw ValidationError("overlap_spd", "overlap matrix is not positive definite");

  int zsum = 0;
  for (const auto& a : b.atoms) zsum += a.Z;
  if (zsum - b.charge != b.n_electrons)
    throw ValidationError("electron_count",
                          "sum of Z (" + std::to_string(zsum) + ") minus charge (" +
                              std::to_string(b.charge) + ") != n_electrons (" +
                              std::to_string(b.n_electrons) + ")");
  if (b.n_electrons < 0) throw ValidationError("electron_count", "negative electron count");

  if (b.mo_coeff.size() > 0) {
    if (static_cast<std::size_t>(b.mo_coeff.rows()) != n)
      throw ValidationError("dimensions", "mo_coeff must have one row per AO");
    if (b.mo_energies.size() > 0 && b.mo_energies.size() != b.mo_coeff.cols())
      throw ValidationError("dimensions", "mo_energies length differs from MO count");
    const Matrix ovl = b.mo_coeff.transpose() * b.overlap * b.mo_coeff;
    const double dev = (ovl - Matrix::Identity(ovl.rows(), ovl.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-8)
      throw ValidationError("mo_orthonormality",
                            "max |C^T S C - I| = " + std::to_string(dev) + " exceeds 1e-8");
  }
}

MoleculeBundle parse_bundle_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "line L, column C" inside what()
    throw ParseError(std::string("bundle is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("bundle: top level must be an object", 1);
  BundleReader rd(text, root);

  const int version = rd.integer(rd.require("format_version"), "format_version");
  if (version != kBundleFormatVersion)
    rd.fail("format_version", "unsupported version " + std::to_string(version));

  MoleculeBundle b;
  const auto& atoms = rd.require("atoms");
  if (!atoms.is_array() || atoms.empty()) rd.fail("atoms", "expected a non-empty array");
  for (const auto& a : atoms) {
    if (!a.is_object() || !a.contains("symbol") || !a.contains("Z") || !a.contains("position"))
      rd.fail("atoms", "each atom needs symbol, Z and position");
    Atom atom;
    if (!a["symbol"].is_string()) rd.fail("atoms", "symbol must be a string");
    atom.symbol = a["symbol"].get<std::string>();
    atom.Z = rd.integer(a["Z"], "atoms");
    const auto pos = rd.vec(a["position"], "atoms");
    if (pos.size() != 3) rd.fail("atoms", "position needs 3 coordinates");
    atom.position = Vec3(pos[0], pos[1], pos[2]);
    b.atoms.push_back(std::move(atom));
  }
  b.charge = rd.integer(rd.require("charge"), "charge");
  int zsum = 0;
  for (const auto& a : b.atoms) zsum += a.Z;
  b.n_electrons = rd.has("n_electrons") ? rd.integer(root["n_electrons"], "n_electrons")
                                        : zsum - b.charge;

  const auto& shells = rd.require("basis_shells");
  if (!shells.is_array()) rd.fail("basis_shells", "expected an array");
  for (const auto& s : shells) {
    if (!s.is_object() || !s.contains("atom") || !s.contains("l") || !s.contains("exponents") ||
        !s.contains("coefficients"))
      rd.fail("basis_shells", "each shell needs atom, l, exponents, coefficients");
    const int atom = rd.integer(s["atom"], "basis_shells");
    const int l = rd.integer(s["l"], "basis_shells");
    if (atom < 0 || static_cast<std::size_t>(atom) >= b.atoms.size())
      rd.fail("basis_shells", "atom index " + std::to_string(atom) + " out of range");
    try {
      b.shells.emplace_back(b.atoms[atom].position, l, rd.vec(s["exponents"], "basis_shells"),
                            rd.vec(s["coefficients"], "basis_shells"), atom);
    } catch (const UnsupportedError& e) {
      rd.fail("basis_shells", e.what());
    } catch (const std::invalid_argument& e) {
      rd.fail("basis_shells", e.what());
    }
  }

  b.overlap = rd.matrix(rd.require("overlap"), "overlap");
  b.core_h = rd.matrix(rd.require("core_h"), "core_h");
  const auto n = static_cast<std::size_t>(b.overlap.rows());
  b.eri = EriTensor(n);
  const auto& eri = rd.require("eri");
  if (!eri.is_array()) rd.fail("eri", "expected an array of [p, q, r, s, value]");
  for (const auto& e : eri) {
    if (!e.is_array() || e.size() != 5) rd.fail("eri", "entries must be [p, q, r, s, value]");
    std::size_t idx[4];
    for (int k = 0; k < 4; ++k) {
      const int v = rd.integer(e[k], "eri");
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        rd.fail("eri", "index " + std::to_string(v) + " out of range");
      idx[k] = static_cast<std::size_t>(v);
    }
    b.eri.at(idx[0], idx[1], idx[2], idx[3]) = rd.number(e[4], "eri");
  }
  b.mo_coeff = rd.matrix(rd.require("mo_coeff"), "mo_coeff");
  if (rd.has("mo_energies")) {
    const auto v = rd.vec(root["mo_energies"], "mo_energies");
    b.mo_energies = Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  b.e_nuc = rd.number(rd.require("e_nuc"), "e_nuc");
  if (rd.has("dipole_integrals")) {
    const auto& d = root["dipole_integrals"];
    if (!d.is_array() || d.size() != 3) rd.fail("dipole_integrals", "expected 3 matrices");
    std::array<Matrix, 3> dip;
    for (int k = 0; k < 3; ++k) dip[k] = rd.matrix(d[k], "dipole_integrals");
    b.dipole_integrals = std::move(dip);
  }

  validate_bundle(b);
  return b;
}

MoleculeBundle parse_bundle(const std::filesystem::path& path) {
  return parse_bundle_text(read_text_file(path));
}

std::string serialize_bundle(const MoleculeBundle& b) {
  json root;
  root["format_version"] = kBundleFormatVersion;
  json atoms = json::array();
  for (const auto& a : b.atoms)
    atoms.push_back({{"symbol", a.symbol},
                     {"Z", a.Z},
                     {"position", {a.position.x(), a.position.y(), a.position.z()}}});
  root["atoms"] = std::move(atoms);
  root["charge"] = b.charge;
  root["n_electrons"] = b.n_electrons;
  json shells = json::array();
  for (const auto& s : b.shells)
    shells.push_back({{"atom", s.atom()},
                      {"l", s.l()},
                      {"exponents", s.exponents()},
                      {"coefficients", s.contraction()}});
  root["basis_shells"] = std::move(shells);
  root["overlap"] = matrix_json(b.overlap);
  root["core_h"] = matrix_json(b.core_h);
  json eri = json::array();
  const std::size_t n = b.eri.dim();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= (r == p ? q : r); ++s) {
          const double v = b.eri(p, q, r, s);
          if (v != 0.0) eri.push_back({p, q, r, s, v});
        }
  root["eri"] = std::move(eri);
  root["mo_coeff"] = matrix_json(b.mo_coeff);
  if (b.mo_energies.size() > 0)
    root["mo_energies"] = std::vector<double>(b.mo_energies.data(),
                                              b.mo_energies.data() + b.mo_energies.size());
  root["e_nuc"] = b.e_nuc;
  if (b.dipole_integrals) {
    json d = json::array();
    for (const auto& m : *b.dipole_integrals) d.push_back(matrix_json(m));
    root["dipole_integrals"] = std::move(d);
  }
  return root.dump(1) + "\n";
}

void write_bundle(const MoleculeBundle& bundle, const std::filesystem::path& path) {
  write_text_file(path, serialize_bundle(bundle));
}

// ---------------------------------------------------------------------------
// FCIDUMP
// ---------------------------------------------------------------------------

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

bool header_int(const std::string& header, const std::string& key, int& out) {
  const std::regex re("(^|[^A-Z])" + key + "\\s*=\\s*(-?[0-9]+)");
  std::smatch m;
  if (!std::regex_search(header, m, re)) return false;
  out = std::stoi(m[2].str());
  return true;
}

double parse_fortran_double(std::string tok, std::size_t line) {
  for (auto& c : tok)
    if (c == 'D' || c == 'd') c = 'E';
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') throw ParseError("fcidump: bad number '" + tok + "'", line);
  return v;
}

}  // namespace

FcidumpData parse_fcidump_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string header;
  std::size_t lineno = 0;
  bool in_header = false;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string u = upper(line);
    if (!in_header) {
      if (u.find("&FCI") == std::string::npos)
        throw ParseError("fcidump: expected '&FCI' header", lineno);
      in_header = true;
    }
    header += u + " ";
    if (u.find("&END") != std::string::npos || u.find("/") != std::string::npos) {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw ParseError("fcidump: unterminated header (no &END)", lineno);
  if (header.find("UHF=.TRUE.") != std::string::npos || header.find("UHF=T") != std::string::npos)
    throw UnsupportedError("fcidump: only spatial-orbital (RHF) integrals are supported");

  FcidumpData d;
  int norb = 0;
  if (!header_int(header, "NORB", norb) || norb <= 0)
    throw ParseError("fcidump: header lacks a positive NORB", lineno);
  if (!header_int(header, "NELEC", d.n_elec)) throw ParseError("fcidump: header lacks NELEC", lineno);
  header_int(header, "MS2", d.ms2);
  if (d.ms2 != 0) throw UnsupportedError("fcidump: only closed-shell (MS2=0) files are supported");
  d.n_orb = static_cast<std::size_t>(norb);
  d.h = Matrix::Zero(norb, norb);
  d.eri = EriTensor(d.n_orb);

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks.size() != 5) throw ParseError("fcidump: expected 'value i j k l'", lineno);
    const double v = parse_fortran_double(toks[0], lineno);
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      try {
        std::size_t used = 0;
        idx[k] = std::stoi(toks[k + 1], &used);
        if (used != toks[k + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("fcidump: bad orbital index '" + toks[k + 1] + "'", lineno);
      }
      if (idx[k] < 0 || idx[k] > norb)
        throw ParseError("fcidump: orbital index " + std::to_string(idx[k]) + " out of range",
                         lineno);
    }
    const auto [i, j, k, l] = idx;
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      d.eri.at(i - 1, j - 1, k - 1, l - 1) = v;
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      d.h(i - 1, j - 1) = v;
      d.h(j - 1, i - 1) = v;
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      d.e_core = v;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy line; not needed
    } else {
      throw ParseError("fcidump: unrecognized index pattern", lineno);
    }
  }
  return d;
}

FcidumpData parse_fcidump(const std::filesystem::path& path) {
  return parse_fcidump_text(read_text_file(path));
}

std::string serialize_fcidump(const FcidumpData& d, double threshold) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "&FCI NORB=%zu,NELEC=%d,MS2=%d,\n ORBSYM=", d.n_orb, d.n_elec,
                d.ms2);
  out += buf;
  for (std::size_t i = 0; i < d.n_orb; ++i) out += "1,";
  out += "\n ISYM=1,\n&END\n";
  auto emit = [&](double v, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    if (v == 0.0 || std::abs(v) < threshold) return;
    std::snprintf(buf, sizeof buf, "%24.17e %3zu %3zu %3zu %3zu\n", v, i, j, k, l);
    out += buf;
  };
  const std::size_t n = d.n_orb;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= (r == p ? q : r); ++s)
          emit(d.eri(p, q, r, s), p + 1, q + 1, r + 1, s + 1);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) emit(d.h(p, q), p + 1, q + 1, 0, 0);
  std::snprintf(buf, sizeof buf, "%24.17e %3d %3d %3d %3d\n", d.e_core, 0, 0, 0, 0);
  out += buf;
  return out;
}

void write_fcidump(const FcidumpData& data, const std::filesystem::path& path) {
  write_text_file(path, serialize_fcidump(data));
}

// ---------------------------------------------------------------------------
// Cube
// ---------------------------------------------------------------------------

namespace {

const char* const kElements[] = {"X",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",
                                 "Ne", "Na", "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar"};

std::string symbol_of(int z) {
  if (z >= 0 && z < static_cast<int>(std::size(kElements))) return kElements[z];
  return "X";
}



}  // namespace

std::string serialize_cube(const CubeGrid& g, const std::vector<Atom>& atoms,
                           const std::string& comment) {
  if (g.values.size() != g.size())
    throw std::invalid_argument("cube: values length " + std::to_string(g.values.size()) +
                                " != nx*ny*nz = " + std::to_string(g.size()));
  if (std::abs(g.axes.determinant()) < 1e-12)
    throw std::invalid_argument("cube: axis vectors are linearly dependent");
  std::string out;
  char buf[160];
  out += (comment.empty() ? std::string("rdmvqe cube") : comment) + "\n";
  out += "outer loop x, middle y, inner z; bohr\n";
  std::snprintf(buf, sizeof buf, "%5zu%12.6f%12.6f%12.6f\n", atoms.size(), g.origin.x(),
                g.origin.y(), g.origin.z());
  out += buf;
  for (int a = 0; a < 3; ++a) {
    std::snprintf(buf, sizeof buf, "%5d%12.6f%12.6f%12.6f\n", g.counts[a], g.axes(a, 0),
                  g.axes(a, 1), g.axes(a, 2));
    out += buf;
  }
  for (const auto& at : atoms) {
    std::snprintf(buf, sizeof buf, "%5d%12.6f%12.6f%12.6f%12.6f\n", at.Z,
                  static_cast<double>(at.Z), at.position.x(), at.position.y(), at.position.z());
    out += buf;
  }
  std::size_t idx = 0;
  for (int i = 0; i < g.counts[0]; ++i)
    for (int j = 0; j < g.counts[1]; ++j) {
      for (int k = 0; k < g.counts[2]; ++k) {
        std::snprintf(buf, sizeof buf, "%13.5E", g.values[idx++]);
        out += buf;
        if (k % 6 == 5) out += "\n";
      }
      if (g.counts[2] % 6 != 0) out += "\n";
    }
  return out;
}

void write_cube(const CubeGrid& grid, const std::vector<Atom>& atoms,
                const std::filesystem::path& path, const std::string& comment) {
  write_text_file(path, serialize_cube(grid, atoms, comment));
}

std::pair<CubeGrid, std::vector<Atom>> parse_cube_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(std::string("cube: missing ") + what, lineno + 1);
    ++lineno;
    return std::istringstream(line);
  };
  next_line("comment line 1");
  next_line("comment line 2");

  CubeGrid g;
  int natoms = 0;
  {
    auto ls = next_line("atom count/origin line");
    if (!(ls >> natoms >> g.origin.x() >> g.origin.y() >> g.origin.z()))
      throw ParseError("cube: malformed atom count/origin line", lineno);
  }
  bool angstrom = false;
  for (int a = 0; a < 3; ++a) {
    auto ls = next_line("axis line");
    double x, y, z;
    if (!(ls >> g.counts[a] >> x >> y >> z)) throw ParseError("cube: malformed axis line", lineno);
    if (g.counts[a] < 0) {
      angstrom = true;
      g.counts[a] = -g.counts[a];
    }
    if (g.counts[a] == 0) throw ParseError("cube: zero grid count", lineno);
    g.axes.row(a) = Eigen::RowVector3d(x, y, z);
  }
  if (angstrom) {
    g.axes *= kAngstromToBohr;
    g.origin *= kAngstromToBohr;
  }
  std::vector<Atom> atoms;
  for (int a = 0; a < std::abs(natoms); ++a) {
    auto ls = next_line("atom line");
    Atom at;
    double charge;
    if (!(ls >> at.Z >> charge >> at.position.x() >> at.position.y() >> at.position.z()))
      throw ParseError("cube: malformed atom line", lineno);
    if (angstrom) at.position *= kAngstromToBohr;
    at.symbol = symbol_of(at.Z);
    atoms.push_back(std::move(at));
  }
  if (natoms < 0) {
    auto ls = next_line("orbital index line");
    int nval = 0;
    ls >> nval;
    if (nval != 1) throw UnsupportedError("cube: multi-valued (orbital) cubes are not supported");
  }
  const std::size_t data_start = lineno + 1;
  g.values.reserve(g.size());
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw ParseError("cube: bad data value '" + tok + "'", data_start);
    g.values.push_back(v);
  }
  if (g.values.size() != g.size())
    throw ParseError("cube: found " + std::to_string(g.values.size()) + " values, header implies " +
                         std::to_string(g.size()),
                     data_start);
  return {std::move(g), std::move(atoms)};
}

std::pair<CubeGrid, std::vector<Atom>> read_cube(const std::filesystem::path& path) {
  return parse_cube_text(read_text_file(path));
}

}  // namespace rdmvqe
