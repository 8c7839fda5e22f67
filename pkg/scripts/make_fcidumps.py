"""Regenerate the bundled FCIDUMP files (needs pyscf, which the package itself does not)."""

from pathlib import Path

from pyscf import gto, scf
from pyscf.tools import fcidump

DATA = Path(__file__).resolve().parents[1] / "src" / "baranyai_grouping" / "data"

MOLECULES = {
    "h2_sto3g": "H 0 0 0; H 0 0 0.7414",
    "lih_sto3g": "Li 0 0 0; H 0 0 1.5949",
    "h2o_sto3g": "O 0 0 0.1173; H 0 0.7572 -0.4692; H 0 -0.7572 -0.4692",
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for name, geom in MOLECULES.items():
        mol = gto.M(atom=geom, basis="sto-3g", unit="Angstrom", verbose=0)
        mf = scf.RHF(mol).run()
        out = DATA / f"{name}.fcidump"
        fcidump.from_scf(mf, str(out), tol=1e-12)
        print(f"{name}: norb={mol.nao} nelec={mol.nelectron} e_hf={mf.e_tot:.8f} -> {out.name}")


if __name__ == "__main__":
    main()
