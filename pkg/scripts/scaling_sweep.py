"""Group and string counts against qubit count for dense and banded synthetic Hamiltonians.

    python scripts/scaling_sweep.py --kind dense --sizes 8 12 16 20 24
    python scripts/scaling_sweep.py --kind chain --width 2 --sizes 8 16 24 32 40 --csv chain.csv
"""

import argparse
import csv
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from baranyai_grouping.cli import stats_rows


@dataclass
class SweepConfig:
    kind: str = "dense"
    sizes: list[int] = field(default_factory=lambda: [8, 12, 16, 20, 24])
    width: int | None = None
    seed: int = 7
    csv: str | None = None


def loglog_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def run(cfg: SweepConfig) -> list[dict]:
    rows = stats_rows(cfg.kind, cfg.sizes, cfg.width, cfg.seed)
    out = open(cfg.csv, "w", newline="") if cfg.csv else sys.stdout
    writer = csv.DictWriter(out, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    if cfg.csv:
        out.close()
    if len(rows) > 1:
        ns = [r["n_qubits"] for r in rows]
        print(f"# slope log(groups) vs log(N): {loglog_slope(ns, [r['n_groups'] for r in rows]):.3f}")
        print(f"# slope log(strings) vs log(N): {loglog_slope(ns, [r['n_strings'] for r in rows]):.3f}")
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    d = SweepConfig()
    p.add_argument("--kind", choices=["dense", "chain"], default=d.kind)
    p.add_argument("--sizes", type=int, nargs="+", default=d.sizes, help="even qubit counts")
    p.add_argument("--width", type=int)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--csv")
    cfg = SweepConfig(**vars(p.parse_args()))
    print("# " + " ".join(f"{k}={v}" for k, v in asdict(cfg).items()))
    run(cfg)


if __name__ == "__main__":
    main()
