"""Molecular integral I/O (FCIDUMP, native JSON) and synthetic benchmark Hamiltonians."""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .fermion_jw import DEFAULT_THRESHOLD, ExcitationTerm, reduce_hermitian


class FcidumpError(ValueError):
    """Malformed FCIDUMP text; ``line`` is 1-based when known."""

    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class HamiltonianSpec:
    """Spatial-orbital integrals, chemists' notation, 1-based indices.

    ``one_body`` and ``two_body`` hold every symmetry-equivalent key.
    """

    n_spatial: int
    n_electrons: int = 0
    core_energy: float = 0.0
    one_body: dict[tuple[int, int], float] = field(default_factory=dict)
    two_body: dict[tuple[int, int, int, int], float] = field(default_factory=dict)
    ms2: int = 0
    orbsym: list[int] = field(default_factory=list)

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_spatial

    def set_one(self, p: int, q: int, v: float):
        self.one_body[(p, q)] = v
        self.one_body[(q, p)] = v

    def set_two(self, p: int, q: int, r: int, s: int, v: float):
        for key in two_body_orbit(p, q, r, s):
            self.two_body[key] = v

    def unique_one(self) -> list[tuple[int, int, float]]:
        return sorted((p, q, v) for (p, q), v in self.one_body.items() if p >= q)

    def unique_two(self) -> list[tuple[int, int, int, int, float]]:
        return sorted(
            (*k, v) for k, v in self.two_body.items() if k == canonical_two_body_key(*k)
        )


def two_body_orbit(p: int, q: int, r: int, s: int) -> set[tuple[int, int, int, int]]:
    """The 8 keys equal to (pq|rs) for real orbitals."""
    return {
        (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
        (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
    }


def canonical_two_body_key(p: int, q: int, r: int, s: int) -> tuple[int, int, int, int]:
    a, b = max(p, q), min(p, q)
    c, d = max(r, s), min(r, s)
    return (a, b, c, d) if (a, b) >= (c, d) else (c, d, a, b)


_HEADER_RE = re.compile(r"&FCI(.*?)(?:&END|/)", re.S | re.I)


def _parse_header(header: str) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    key = None
    for tok in re.split(r"[,\s]+", header.strip()):
        if not tok:
            continue
        if "=" in tok:
            key, val = tok.split("=", 1)
            key = key.upper()
            out[key] = [val] if val else []
        elif key is None:
            raise FcidumpError(f"unexpected header token {tok!r}", 1)
        else:
            out[key].append(tok)
    return out


def parse_fcidump(text: str) -> HamiltonianSpec:
    m = _HEADER_RE.search(text)
    if m is None:
        raise FcidumpError("missing &FCI ... &END header", 1)
    fields = _parse_header(m.group(1))
    try:
        norb = int(fields["NORB"][0])
        nelec = int(fields.get("NELEC", ["0"])[0])
        ms2 = int(fields.get("MS2", ["0"])[0])
        orbsym = [int(v) for v in fields.get("ORBSYM", [])]
    except (KeyError, IndexError, ValueError) as exc:
        raise FcidumpError(f"bad header field: {exc}", 1) from None
    if norb < 1:
        raise FcidumpError("NORB must be positive", 1)

    spec = HamiltonianSpec(norb, nelec, ms2=ms2, orbsym=orbsym)
    body_start = m.end()
    first_line = text.count("\n", 0, body_start) + 1
    for offset, line in enumerate(text[body_start:].splitlines()):
        lineno = first_line + offset
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 5:
            raise FcidumpError(f"expected 'value i j k l', got {line.strip()!r}", lineno)
        try:
            value = float(parts[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError:
            raise FcidumpError(f"non-numeric entry {line.strip()!r}", lineno) from None
        if not all(0 <= v <= norb for v in (i, j, k, l)):
            raise FcidumpError(f"orbital index out of range 0..{norb}", lineno)
        if i == j == k == l == 0:
            spec.core_energy += value
        elif k == 0 and l == 0:
            if j == 0:
                continue  # orbital energy line, not needed
            spec.set_one(i, j, value)
        elif min(i, j, k, l) == 0:
            raise FcidumpError("partial zero indices in two-body line", lineno)
        else:
            spec.set_two(i, j, k, l, value)
    return spec


def to_fcidump(spec: HamiltonianSpec) -> str:
    orbsym = spec.orbsym or [1] * spec.n_spatial
    lines = [
        f" &FCI NORB={spec.n_spatial:4d},NELEC={spec.n_electrons:2d},MS2={spec.ms2},",
        "  ORBSYM=" + ",".join(str(o) for o in orbsym) + ",",
        "  ISYM=1,",
        " &END",
    ]
    for p, q, r, s, v in spec.unique_two():
        lines.append(f" {v!r} {p:4d} {q:4d} {r:4d} {s:4d}")
    for p, q, v in spec.unique_one():
        lines.append(f" {v!r} {p:4d} {q:4d}    0    0")
    lines.append(f" {spec.core_energy!r}    0    0    0    0")
    return "\n".join(lines) + "\n"


def to_json(spec: HamiltonianSpec) -> str:
    return json.dumps(
        {
            "n_spatial": spec.n_spatial,
            "n_electrons": spec.n_electrons,
            "core": spec.core_energy,
            "one_body": [[p, q, v] for p, q, v in spec.unique_one()],
            "two_body": [[p, q, r, s, v] for p, q, r, s, v in spec.unique_two()],
        },
        indent=1,
    )


def from_json(text: str) -> HamiltonianSpec:
    obj = json.loads(text)
    spec = HamiltonianSpec(int(obj["n_spatial"]), int(obj.get("n_electrons", 0)), float(obj.get("core", 0.0)))
    for p, q, v in obj.get("one_body", []):
        spec.set_one(int(p), int(q), float(v))
    for p, q, r, s, v in obj.get("two_body", []):
        spec.set_two(int(p), int(q), int(r), int(s), float(v))
    for key in list(spec.one_body) + [k[:2] for k in spec.two_body] + [k[2:] for k in spec.two_body]:
        if not all(1 <= i <= spec.n_spatial for i in key):
            raise ValueError(f"index {key} outside 1..{spec.n_spatial}")
    return spec


def load(path: str | Path, fmt: str | None = None) -> HamiltonianSpec:
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "fcidump"
    text = path.read_text()
    return from_json(text) if fmt == "json" else parse_fcidump(text)


def bundled(name: str) -> HamiltonianSpec:
    """Load a packaged FCIDUMP, e.g. ``bundled("h2_sto3g")``."""
    text = resources.files("baranyai_grouping").joinpath("data", f"{name}.fcidump").read_text()
    return parse_fcidump(text)


def raw_spin_orbital_terms(spec: HamiltonianSpec) -> dict[tuple[int, ...], float]:
    """H = sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_{p s1} a+_{r s2} a_{s s2} a_{q s1}.

    Spin orbitals are blocked: alpha p -> p-1, beta p -> n + p-1.
    """
    n = spec.n_spatial
    raw: dict[tuple[int, ...], float] = defaultdict(float)
    spins = (0, n)
    for (p, q), v in spec.one_body.items():
        for off in spins:
            raw[(p - 1 + off, q - 1 + off)] += v
    for (p, q, r, s), v in spec.two_body.items():
        for o1 in spins:
            for o2 in spins:
                raw[(p - 1 + o1, r - 1 + o2, s - 1 + o2, q - 1 + o1)] += 0.5 * v
    return raw


def to_spin_orbital_terms(spec: HamiltonianSpec, threshold: float = DEFAULT_THRESHOLD) -> list[ExcitationTerm]:
    return reduce_hermitian(raw_spin_orbital_terms(spec), threshold=threshold)


class SplitMix64:
    """Tiny deterministic generator so synthetic integrals are platform independent."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next() >> 11) / float(1 << 53)

    def magnitude(self, lo: float = 0.01, hi: float = 1.0) -> float:
        """Signed value with |v| in [lo, hi]."""
        v = lo + (hi - lo) * self.uniform()
        return v if self.next() & 1 else -v


def synth_hamiltonian(kind: str, n_spatial: int, width: int | None = None, seed: int = 7) -> HamiltonianSpec:
    """Dense (all integrals nonzero) or banded 'chain' integrals.

    For ``chain`` an integral survives only when its orbital indices span at
    most ``width``.
    """
    if n_spatial < 1:
        raise ValueError("n_spatial must be positive")
    if kind == "chain":
        if width is None or width < 0:
            raise ValueError("chain Hamiltonian needs a non-negative width")
    elif kind != "dense":
        raise ValueError(f"unknown kind {kind!r}")
    rng = SplitMix64(seed)
    spec = HamiltonianSpec(n_spatial, n_electrons=n_spatial)

    def allowed(*idx):
        return kind == "dense" or max(idx) - min(idx) <= width

    rng_core = rng.magnitude()
    spec.core_energy = abs(rng_core)
    for p in range(1, n_spatial + 1):
        for q in range(1, p + 1):
            if allowed(p, q):
                spec.set_one(p, q, rng.magnitude())
    pairs = [(p, q) for p in range(1, n_spatial + 1) for q in range(1, p + 1)]
    for a, (p, q) in enumerate(pairs):
        for r, s in pairs[: a + 1]:
            if allowed(p, q, r, s):
                spec.set_two(p, q, r, s, rng.magnitude())
    return spec
