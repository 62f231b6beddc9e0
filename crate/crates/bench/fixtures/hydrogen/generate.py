"""Regenerate the hydrogen-chain FCIDUMP fixtures.

Linear, equally spaced H_n chains in STO-3G, RHF orbitals, full-CI reference
energy in the sidecar .meta file.

    python3 generate.py
"""
import os

from pyscf import gto, scf, fci
from pyscf.tools import fcidump

HERE = os.path.dirname(os.path.abspath(__file__))
SPACINGS = [1.00, 1.50, 2.00, 2.50, 3.00]
SIZES = [2, 4, 6]


def build(n, r):
    atom = [("H", (0.0, 0.0, i * r)) for i in range(n)]
    mol = gto.M(atom=atom, basis="sto-3g", unit="Angstrom", spin=0, verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 500
    mf.kernel()
    if not mf.converged:
        mf = scf.newton(mf)
        mf.kernel()
    cis = fci.FCI(mf)
    cis.conv_tol = 1e-12
    e_fci, _ = cis.kernel()
    return mf, e_fci


def main():
    for n in SIZES:
        for r in SPACINGS:
            stem = f"h{n}_r{r:.2f}"
            path = os.path.join(HERE, stem + ".fcidump")
            mf, e_fci = build(n, r)
            fcidump.from_scf(mf, path, tol=1e-14)
            with open(os.path.join(HERE, stem + ".meta"), "w") as fh:
                fh.write(f"system=H{n}\n")
                fh.write(f"spacing_angstrom={r:.2f}\n")
                fh.write("basis=sto-3g\n")
                fh.write("geometry=linear equally spaced chain along z\n")
                fh.write("reference=RHF\n")
                fh.write(f"e_hf={mf.e_tot:.12f}\n")
                fh.write(f"e_fci={e_fci:.12f}\n")
                fh.write("generator=pyscf " + __import__("pyscf").__version__ + "\n")
                fh.write("command=python3 generate.py\n")


if __name__ == "__main__":
    main()
