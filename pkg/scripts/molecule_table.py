"""String and group counts for the bundled molecular integrals.

Pass extra FCIDUMP paths to include them in the table.
"""

import argparse
import time
from pathlib import Path

from baranyai_grouping import ham_io
from baranyai_grouping.diag_circuit import diagonalize_group
from baranyai_grouping.spin_groups import partition_hamiltonian, predicted_total_groups

BUNDLED = ["h2_sto3g", "lih_sto3g", "h2o_sto3g"]


def row(name, spec):
    t0 = time.perf_counter()
    groups = partition_hamiltonian(ham_io.to_spin_orbital_terms(spec), spec.n_qubits, spec.core_energy)
    gates = max(len(diagonalize_group(g)[0]) for g in groups)
    dt = time.perf_counter() - t0
    n = spec.n_qubits
    strings = sum(len(g) for g in groups)
    return f"{name:<14} {n:>3} {strings:>8} {len(groups):>7} {predicted_total_groups(n):>10} {gates:>6}/{3 * n:<3} {dt:>7.2f}"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("fcidumps", nargs="*")
    args = p.parse_args()
    print(f"{'system':<14} {'N':>3} {'strings':>8} {'groups':>7} {'predicted':>10} {'gates':>10} {'time_s':>7}")
    for name in BUNDLED:
        print(row(name, ham_io.bundled(name)))
    for path in args.fcidumps:
        print(row(Path(path).stem, ham_io.load(path)))


if __name__ == "__main__":
    main()
