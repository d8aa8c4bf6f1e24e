#!/usr/bin/env python3
# Copyright 2026 The cliffvqd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generate 2-qubit H2 / HeH+ Hamiltonian files and sweep manifests.

Needs pyscf and openfermion. STO-3G, RHF orbitals, symmetry-conserving
Bravyi-Kitaev reduction from 4 spin orbitals to 2 qubits. Output labels put
OpenFermion qubit i at character i.
"""

import argparse
import json
import pathlib

import numpy as np
import openfermion as of
from pyscf import ao2mo, gto, scf

MOLECULES = {
    "h2": dict(atoms=("H", "H"), charge=0,
               grid=[0.30, 0.45, 0.60, 0.74, 0.90, 1.10, 1.40, 1.80, 2.20, 2.60]),
    "hehp": dict(atoms=("He", "H"), charge=1,
                 grid=[0.50, 0.65, 0.77, 0.90, 1.05, 1.25, 1.50, 1.85, 2.25, 2.75]),
}


def qubit_hamiltonian(atoms, charge, bond):
    mol = gto.M(atom=[(atoms[0], (0, 0, 0)), (atoms[1], (0, 0, bond))],
                basis="sto-3g", charge=charge, spin=0, verbose=0)
    mf = scf.RHF(mol).run()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    norb = c.shape[1]
    h2 = ao2mo.restore(1, ao2mo.kernel(mol, c), norb)
    # chemist (pq|rs) -> openfermion <pq|sr>-style ordering
    h2 = np.asarray(h2.transpose(0, 2, 3, 1), order="C")
    one, two = of.chem.molecular_data.spinorb_from_spatial(h1, h2)
    op = of.InteractionOperator(mol.energy_nuc(), one, 0.5 * two)
    ferm = of.get_fermion_operator(op)
    qh = of.symmetry_conserving_bravyi_kitaev(ferm, 2 * norb, mol.nelectron)
    qh.compress(1e-12)
    return qh


def to_lines(qh, n):
    lines = []
    for term, coef in sorted(qh.terms.items()):
        label = ["I"] * n
        for q, p in term:
            label[q] = p
        lines.append(f"{coef.real:.15g} {''.join(label)}")
    return lines


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="samples/molecular", type=pathlib.Path)
    ap.add_argument("--levels", default=3, type=int)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, spec in MOLECULES.items():
        points = []
        for bond in spec["grid"]:
            qh = qubit_hamiltonian(spec["atoms"], spec["charge"], bond)
            n = of.count_qubits(qh)
            if n != 2:
                raise SystemExit(f"{name} at {bond}: expected 2 qubits, got {n}")
            fname = f"{name}_{bond:.2f}.ham"
            with open(args.out / fname, "w") as f:
                f.write(f"# {name} sto-3g bond={bond:.2f} angstrom, scbk 2-qubit\n")
                f.write("\n".join(to_lines(qh, n)) + "\n")
            points.append({"label": f"{bond:.2f}", "hamiltonian": fname})
        manifest = {"levels": args.levels, "transfer": True, "points": points}
        with open(args.out / f"{name}_sweep.json", "w") as f:
            json.dump(manifest, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    main()
