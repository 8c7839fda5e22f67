"""Command line front end: group, circuits, verify, stats, synth."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import ham_io
from .diag_circuit import DiagonalizationError, diagonalize_group, verify_diagonalization
from .estimator import MAX_QUBITS, expectation_direct, expectation_grouped, random_state, sample_grouped
from .fermion_jw import DEFAULT_THRESHOLD, WeightedPauli, hamiltonian_strings
from .pauli import pauli_from_labels
from .spin_groups import (
    CommutingGroup,
    GroupingError,
    groups_from_json,
    groups_to_json,
    partition_hamiltonian,
    predicted_total_groups,
    sector_counts,
    verify_groups,
)


@dataclass
class RunConfig:
    input: str | None = None
    fmt: str | None = None
    bundled: str | None = None
    kind: str | None = None
    n_spatial: int | None = None
    width: int | None = None
    groups: str | None = None
    strings: str | None = None
    threshold: float = DEFAULT_THRESHOLD
    out: str | None = None
    seed: int = 7
    shots: int = 1000

    def sources(self) -> list[str]:
        names = {"input": self.input, "bundled": self.bundled, "kind": self.kind,
                 "groups": self.groups, "strings": self.strings}
        return [k for k, v in names.items() if v is not None]

    def source_name(self) -> str:
        if self.input:
            return Path(self.input).name
        if self.bundled:
            return self.bundled
        if self.kind:
            return f"{self.kind}-{self.n_spatial}" + (f"-w{self.width}" if self.kind == "chain" else "")
        return self.groups or "strings"


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(**{k: getattr(args, k, None) for k in (
        "input", "fmt", "bundled", "kind", "n_spatial", "width", "groups", "strings", "out")})
    cfg.threshold = args.threshold
    cfg.seed = args.seed
    cfg.shots = getattr(args, "shots", 1000)
    return cfg


def _summary(**kv) -> str:
    return " ".join(f"{k}={v}" for k, v in kv.items())


@dataclass
class Problem:
    n_qubits: int
    groups: list[CommutingGroup]
    strings: list[WeightedPauli] | None  # full Hamiltonian when known


def _spec(cfg: RunConfig) -> ham_io.HamiltonianSpec:
    if cfg.input:
        return ham_io.load(cfg.input, cfg.fmt)
    if cfg.bundled:
        return ham_io.bundled(cfg.bundled)
    if cfg.n_spatial is None:
        raise SystemExit("--kind needs --n-spatial")
    return ham_io.synth_hamiltonian(cfg.kind, cfg.n_spatial, cfg.width, cfg.seed)


def load_problem(cfg: RunConfig) -> Problem:
    src = cfg.sources()
    if len(src) != 1:
        raise SystemExit(f"exactly one input source required, got {src or 'none'}")
    if cfg.groups:
        n, groups = groups_from_json(Path(cfg.groups).read_text())
        return Problem(n, groups, None)
    if cfg.strings:
        paulis = [pauli_from_labels(s.strip()) for s in cfg.strings.split(",") if s.strip()]
        n = paulis[0].n_qubits
        wps = [WeightedPauli(p, 1.0) for p in paulis]
        return Problem(n, [CommutingGroup(n, "direct", (0,), wps)], wps)
    spec = _spec(cfg)
    terms = ham_io.to_spin_orbital_terms(spec, cfg.threshold)
    strings = hamiltonian_strings(terms, spec.n_qubits, spec.core_energy, cfg.threshold)
    groups = partition_hamiltonian(terms, spec.n_qubits, spec.core_energy, cfg.threshold)
    return Problem(spec.n_qubits, groups, strings)


def cmd_group(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    prob = load_problem(cfg)
    n_strings = sum(len(g) for g in prob.groups)
    if cfg.out:
        Path(cfg.out).write_text(groups_to_json(prob.groups, prob.n_qubits))
    counts = sector_counts(prob.groups)
    double = counts.get("pure-spin", 0) + counts.get("cross-double", 0)
    print(_summary(
        source=cfg.source_name(), n_qubits=prob.n_qubits, n_strings=n_strings, n_groups=len(prob.groups),
        double_groups=double, **{k.replace("-", "_"): v for k, v in counts.items()},
        predicted=predicted_total_groups(prob.n_qubits) if prob.n_qubits % 2 == 0 else "na",
        wall_time_ms=round(1000 * (time.perf_counter() - t0), 1),
    ))
    return 0


def cmd_circuits(cfg: RunConfig) -> int:
    prob = load_problem(cfg)
    entries = []
    ok = True
    max_gates = 0
    for i, g in enumerate(prob.groups):
        try:
            circ, form = diagonalize_group(g)
        except DiagonalizationError as exc:
            print(f"error: group {i}: {exc}", file=sys.stderr)
            return 1
        rep = verify_diagonalization(g, circ)
        ok &= rep.ok
        max_gates = max(max_gates, len(circ))
        if not circ.gates:
            continue
        entries.append({
            "group": i,
            "sector": g.sector,
            "gates": circ.to_json(),
            "gate_count": len(circ),
            "gate_bound": rep.gate_bound,
            "within_bound": rep.within_bound,
            "diagonal": [d.label for d in form.diagonals],
            "signs": form.signs,
        })
    if cfg.out:
        Path(cfg.out).write_text(json.dumps({"n_qubits": prob.n_qubits, "circuits": entries}, indent=1))
    print(_summary(source=cfg.source_name(), n_qubits=prob.n_qubits, n_groups=len(prob.groups),
                   n_circuits=len(entries), max_gates=max_gates, gate_bound=3 * prob.n_qubits,
                   verified=ok))
    if cfg.strings and entries:
        for gate in entries[0]["gates"]:
            print(json.dumps(gate))
    return 0 if ok else 1


def cmd_verify(cfg: RunConfig) -> int:
    try:
        prob = load_problem(cfg)
    except GroupingError as exc:
        print(_summary(check="partition", ok=False, error=repr(str(exc))))
        return 1
    results = {}
    bad = verify_groups(prob.groups)
    results["commutation"] = not bad
    print(_summary(check="commutation", ok=not bad, bad_groups=len(bad)))
    if bad:
        return 1

    plans = []
    diag_ok = True
    for g in prob.groups:
        try:
            circ, form = diagonalize_group(g)
        except DiagonalizationError:
            diag_ok = False
            break
        diag_ok &= verify_diagonalization(g, circ).ok
        plans.append((circ, form))
    results["diagonalization"] = diag_ok
    print(_summary(check="diagonalization", ok=diag_ok))

    if diag_ok and prob.n_qubits <= MAX_QUBITS:
        psi = random_state(prob.n_qubits, cfg.seed)
        reference = prob.strings if prob.strings is not None else [wp for g in prob.groups for wp in g.strings]
        direct = expectation_direct(reference, psi)
        grouped = expectation_grouped(prob.groups, plans, psi)
        exact_ok = abs(direct - grouped) < 1e-9 * max(1.0, abs(direct))
        results["exact"] = exact_ok
        print(_summary(check="grouped_vs_direct", ok=exact_ok, direct=f"{direct:.12g}",
                       grouped=f"{grouped:.12g}"))
        est, err = sample_grouped(prob.groups, plans, psi, cfg.shots, seed=cfg.seed)
        sampled_ok = abs(est - direct) <= 5 * err + 1e-12
        results["sampled"] = sampled_ok
        print(_summary(check="sampled", ok=sampled_ok, shots_per_group=cfg.shots,
                       estimate=f"{est:.6g}", std_error=f"{err:.3g}"))
    elif prob.n_qubits > MAX_QUBITS:
        print(_summary(check="grouped_vs_direct", skipped=f"n_qubits>{MAX_QUBITS}"))
    return 0 if all(results.values()) else 1


def parse_sweep(text: str) -> list[int]:
    try:
        a, b, step = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"sweep must be a:b:step, got {text!r}") from None
    if a < 2 or b < a or step < 1 or a % 2 or step % 2:
        raise argparse.ArgumentTypeError("sweep needs even qubit counts with a <= b and a positive even step")
    return list(range(a, b + 1, step))


def stats_rows(kind: str, sizes: list[int], width: int | None = None, seed: int = 7,
               threshold: float = DEFAULT_THRESHOLD) -> list[dict]:
    rows = []
    for n_qubits in sizes:
        t0 = time.perf_counter()
        spec = ham_io.synth_hamiltonian(kind, n_qubits // 2, width, seed)
        terms = ham_io.to_spin_orbital_terms(spec, threshold)
        groups = partition_hamiltonian(terms, n_qubits, spec.core_energy, threshold)
        rows.append({
            "n_qubits": n_qubits,
            "n_strings": sum(len(g) for g in groups),
            "n_groups": len(groups),
            "wall_time_ms": round(1000 * (time.perf_counter() - t0), 1),
        })
    return rows


def cmd_stats(cfg: RunConfig, sizes: list[int]) -> int:
    if cfg.kind is None:
        raise SystemExit("stats needs --kind")
    rows = stats_rows(cfg.kind, sizes, cfg.width, cfg.seed, cfg.threshold)
    out = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=["n_qubits", "n_strings", "n_groups", "wall_time_ms"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if cfg.out:
            out.close()
    return 0


def cmd_synth(cfg: RunConfig) -> int:
    if cfg.kind is None or cfg.n_spatial is None:
        raise SystemExit("synth needs --kind and --n-spatial")
    spec = ham_io.synth_hamiltonian(cfg.kind, cfg.n_spatial, cfg.width, cfg.seed)
    text = ham_io.to_fcidump(spec) if cfg.fmt == "fcidump" else ham_io.to_json(spec)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="baranyai-group", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, groups_ok=False, strings_ok=False):
        p.add_argument("--input", help="FCIDUMP or native JSON Hamiltonian")
        p.add_argument("--format", dest="fmt", choices=["fcidump", "json"])
        p.add_argument("--bundled", choices=["h2_sto3g", "lih_sto3g", "h2o_sto3g"])
        p.add_argument("--kind", choices=["dense", "chain"], help="synthetic Hamiltonian")
        p.add_argument("--n-spatial", type=int)
        p.add_argument("--width", type=int)
        p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--out")
        if groups_ok:
            p.add_argument("--groups", help="groups JSON written by 'group'")
        if strings_ok:
            p.add_argument("--strings", help="comma-separated commuting labels, one group")

    common(sub.add_parser("group", help="partition into commuting groups"))
    common(sub.add_parser("circuits", help="diagonalising circuits per group"), True, True)
    p = sub.add_parser("verify", help="run all correctness checks")
    common(p, True, True)
    p.add_argument("--shots", type=int, default=1000)
    p = sub.add_parser("stats", help="CSV scaling sweep over synthetic Hamiltonians")
    common(p)
    p.add_argument("--sweep", type=parse_sweep, required=True, help="qubit range a:b:step")
    common(sub.add_parser("synth", help="write a synthetic Hamiltonian"))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    try:
        if args.command == "group":
            return cmd_group(cfg)
        if args.command == "circuits":
            return cmd_circuits(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "stats":
            return cmd_stats(cfg, args.sweep)
        return cmd_synth(cfg)
    except (ValueError, KeyError, OSError) as exc:
        # FcidumpError, bad JSON and missing files all land here
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GroupingError, DiagonalizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
