# Copyright 2026 The rdmvqe Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerate the golden reference data under tests/data with PySCF.

The C++ test-suite never imports this script; it only reads the JSON files it
writes.  Run it manually after changing a fixture definition:

    python3 tools/gen_fixtures.py tests/data
"""

import json
import sys
from pathlib import Path

import numpy as np
from pyscf import ao2mo, fci, gto, scf

ANG = 1.0 / 0.52917721092


def canonical_eri_entries(eri_full, n):
    out = []
    for p in range(n):
        for q in range(p + 1):
            pq = p * (p + 1) // 2 + q
            for r in range(n):
                for s in range(r + 1):
                    rs = r * (r + 1) // 2 + s
                    if rs > pq:
                        continue
                    out.append([p, q, r, s, float(eri_full[p, q, r, s])])
    return out


def shells_of(mol):
    shells = []
    for ib in range(mol.nbas):
        l = int(mol.bas_angular(ib))
        exps = mol.bas_exp(ib).tolist()
        # PySCF stores coefficients for normalized radial primitives; the
        # bundle carries the textbook contraction coefficients instead.
        raw = mol._libcint_ctr_coeff(ib)[:, 0]
        norms = np.array([gto.gto_norm(l, e) for e in exps])
        coefs = (raw / norms).tolist()
        shells.append({"atom": int(mol.bas_atom(ib)), "l": l,
                       "exponents": exps, "coefficients": coefs})
    return shells


def bundle_of(mol, mf, with_dipole):
    n = mol.nao
    atoms = [{"symbol": mol.atom_pure_symbol(i), "Z": int(mol.atom_charge(i)),
              "position": mol.atom_coord(i).tolist()} for i in range(mol.natm)]
    eri = ao2mo.restore(1, mol.intor("int2e", aosym="s8"), n)
    b = {
        "format_version": 1,
        "atoms": atoms,
        "charge": int(mol.charge),
        "n_electrons": int(mol.nelectron),
        "basis_shells": shells_of(mol),
        "overlap": mol.intor("int1e_ovlp").tolist(),
        "core_h": (mol.intor("int1e_kin") + mol.intor("int1e_nuc")).tolist(),
        "eri": canonical_eri_entries(eri, n),
        "mo_coeff": mf.mo_coeff.tolist(),
        "mo_energies": mf.mo_energy.tolist(),
        "e_nuc": float(mol.energy_nuc()),
    }
    if with_dipole:
        with mol.with_common_orig((0.0, 0.0, 0.0)):
            b["dipole_integrals"] = mol.intor("int1e_r").tolist()
    return b


def hydrogen_reference(name, atoms_bohr, charge):
    mol = gto.M(atom=[["H", p] for p in atoms_bohr], basis="sto-3g",
                unit="Bohr", charge=charge, cart=True)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    n = mol.nao
    eri = ao2mo.restore(1, mol.intor("int2e", aosym="s8"), n)
    cis = fci.FCI(mf)
    e_fci, civec = cis.kernel()
    dm1_mo = cis.make_rdm1(civec, mol.nao, mol.nelectron)
    with mol.with_common_orig((0.0, 0.0, 0.0)):
        r = mol.intor("int1e_r")
    return {
        "name": name,
        "atoms": atoms_bohr,
        "charge": charge,
        "overlap": mol.intor("int1e_ovlp").tolist(),
        "kinetic": mol.intor("int1e_kin").tolist(),
        "nuclear": mol.intor("int1e_nuc").tolist(),
        "eri": eri.reshape(-1).tolist(),
        "dipole": r.tolist(),
        "e_nuc": float(mol.energy_nuc()),
        "e_rhf": float(mf.e_tot),
        "e_fci": float(e_fci),
        "fci_natural_occupations": sorted(np.linalg.eigvalsh(dm1_mo).tolist(), reverse=True),
    }


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    refs = [
        hydrogen_reference("H2", [[0.0, 0.0, 0.0], [0.0, 0.0, 1.4]], 0),
        hydrogen_reference("H3+", [[0.0, 0.0, 0.0], [1.65, 0.0, 0.0], [0.825, 1.4289, 0.0]], 1),
        hydrogen_reference("H4", [[0.0, 0.0, 0.0], [0.0, 0.0, 1.5], [0.3, 1.8, 3.2], [0.1, -0.4, 4.9]], 0),
    ]
    (out / "hydrogen_golden.json").write_text(json.dumps(refs, indent=1))

    # A CH5+ STO-3G bundle at an unoptimized Cs-like geometry.  Only used for
    # structural checks (p-shell evaluation, frozen-core folding, charges);
    # it is not the geometry of any published dissociation scan.
    ch5 = gto.M(atom=[
        ["C", (0.000, 0.000, 0.000)],
        ["H", (1.100, 0.000, 0.000)],
        ["H", (-0.400, 1.020, 0.000)],
        ["H", (-0.400, -0.510, 0.880)],
        ["H", (-0.350, -0.430, -1.150)],
        ["H", (0.400, -0.650, -1.250)],
    ], basis="sto-3g", charge=1, cart=True)
    mf = scf.RHF(ch5)
    mf.conv_tol = 1e-12
    mf.kernel()
    b = bundle_of(ch5, mf, with_dipole=True)
    b["reference"] = {"e_rhf": float(mf.e_tot)}
    (out / "ch5plus_sto3g.bundle").write_text(json.dumps(b, indent=1))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
