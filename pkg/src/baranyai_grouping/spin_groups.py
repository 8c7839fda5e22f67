"""Spin-factorised Baranyai partitioning of a JW-mapped molecular Hamiltonian.

Sectors
-------
diagonal      all {Z, I} strings, one group
pure-spin     doubles with four alpha (or four beta) indices
cross-double  doubles with two alpha and two beta indices
triple-*      singles and one-repeat doubles, keyed by a 3-index set and
              split into two maximally commuting halves (blue / red)

Qubits follow spin blocking: alpha = 0..N/2-1, beta = N/2..N-1.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

from .baranyai import baranyai_partition, greedy_pack, predicted_class_count, schedule_positions
from .fermion_jw import DEFAULT_THRESHOLD, ExcitationTerm, WeightedPauli, hamiltonian_strings, jw_excitation
from .pauli import PauliString, all_commute, pauli_from_labels

SECTOR_ORDER = ("diagonal", "pure-spin", "cross-double", "triple-blue", "triple-red")


class GroupingError(RuntimeError):
    pass


@dataclass(frozen=True)
class TermClass:
    sector: str
    active_indices: tuple[int, ...]


@dataclass
class CommutingGroup:
    n_qubits: int
    sector: str
    schedule_id: tuple
    strings: list[WeightedPauli]
    terms: list[ExcitationTerm] = field(default_factory=list)
    index_sets: list[tuple[int, ...]] = field(default_factory=list)

    def paulis(self) -> list[PauliString]:
        return [wp.string for wp in self.strings]

    def __len__(self) -> int:
        return len(self.strings)

    def to_json(self) -> dict:
        return {
            "sector": self.sector,
            "schedule_id": list(self.schedule_id),
            "strings": [wp.to_json() for wp in self.strings],
        }

    @classmethod
    def from_json(cls, n_qubits: int, obj: dict) -> CommutingGroup:
        strings = [WeightedPauli(pauli_from_labels(s["label"]), float(s["weight"])) for s in obj["strings"]]
        for wp in strings:
            if wp.string.n_qubits != n_qubits:
                raise ValueError(f"string {wp.label} does not have {n_qubits} qubits")
        return cls(n_qubits, obj.get("sector", "unknown"), tuple(obj.get("schedule_id", ())), strings)


def groups_to_json(groups: list[CommutingGroup], n_qubits: int) -> str:
    return json.dumps({"n_qubits": n_qubits, "groups": [g.to_json() for g in groups]}, indent=1)


def groups_from_json(text: str) -> tuple[int, list[CommutingGroup]]:
    obj = json.loads(text)
    n = int(obj["n_qubits"])
    return n, [CommutingGroup.from_json(n, g) for g in obj["groups"]]


# --- classification -------------------------------------------------------


def _is_alpha(i: int, n_qubits: int) -> bool:
    return i < n_qubits // 2


def classify_terms(terms: Iterable[ExcitationTerm], n_qubits: int) -> dict[TermClass, list[ExcitationTerm]]:
    """Assign every term one sector.

    Singles have only two active indices; they are padded to a triple with a
    repeat index already used by a one-repeat double on the same pair when
    one exists, else the smallest free index (index ``n_qubits`` is the
    padding element of the triple schedule when no real one is left).
    """
    terms = list(terms)
    repeats_by_pair: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for t in terms:
        if t.arity == "repeated double":
            repeats_by_pair[t.active].append(t.repeated[0])

    out: dict[TermClass, list[ExcitationTerm]] = defaultdict(list)
    for t in terms:
        n_alpha = sum(_is_alpha(i, n_qubits) for i in t.indices)
        if n_alpha % 2:
            raise ValueError(f"term {t.creation}{t.annihilation} violates the spin selection rule")
        arity = t.arity
        if arity == "diagonal":
            key = TermClass("diagonal", ())
        elif arity == "disjoint double":
            n_alpha = sum(_is_alpha(i, n_qubits) for i in t.active)
            sector = {4: "alpha-double", 0: "beta-double", 2: "cross-double"}[n_alpha]
            key = TermClass(sector, t.active)
        elif arity == "repeated double":
            key = TermClass("triple", tuple(sorted(t.active + t.repeated)))
        else:
            pair = t.active
            cands = repeats_by_pair.get(pair)
            if cands:
                pad = min(cands)
            else:
                pad = next((i for i in range(n_qubits + 1) if i not in pair))
            key = TermClass("triple", tuple(sorted(pair + (pad,))))
        out[key].append(t)
    return dict(out)


def triple_color(string: PauliString, triple: tuple[int, ...]) -> str:
    """``blue`` for the {XIX, YZY, IXX, ZYY, XXI, YYZ} half, ``red`` for its partner.

    Pattern: a pair of equal X/Y letters plus I/Z on the third index;
    blue iff (#Y / 2 + #Z) over the triple is even.
    """
    letters = []
    for q in triple:
        if q >= string.n_qubits:
            letters.append("I")
            continue
        xb, zb = (string.x >> q) & 1, (string.z >> q) & 1
        letters.append("IXZY"[xb + 2 * zb])
    flipped = [c for c in letters if c in "XY"]
    if len(flipped) != 2 or flipped[0] != flipped[1]:
        raise GroupingError(f"string {string.label} does not fit the triple pattern on {triple}")
    parity = letters.count("Y") // 2 + letters.count("Z")
    return "blue" if parity % 2 == 0 else "red"


# --- schedules -----------------------------------------------------------


@dataclass
class SectorSchedule:
    classes: list[list[tuple[int, ...]]]
    ids: list[tuple]


def circle_matchings(m: int) -> list[list[tuple[int, int]]]:
    """Round-robin 1-factorisation of K_m (m odd: pad, then drop the bye pairs)."""
    size = m + (m % 2)
    rounds = []
    for r in range(size - 1):
        pairs = [(r, size - 1)]
        for i in range(1, size // 2):
            a, b = (r + i) % (size - 1), (r - i) % (size - 1)
            pairs.append((min(a, b), max(a, b)))
        pairs = sorted(tuple(sorted(p)) for p in pairs if max(p) < m)
        rounds.append(pairs)
    return rounds


def pure_spin_schedule(n_qubits: int) -> SectorSchedule:
    """Alpha 4-subset Baranyai classes, each concatenated with the shifted beta class."""
    if n_qubits % 2:
        raise ValueError("n_qubits must be even")
    half = n_qubits // 2
    base = baranyai_partition(half, 4).real_classes()
    classes = [
        list(cls) + [tuple(i + half for i in s) for s in cls]
        for cls in base
    ]
    return SectorSchedule(classes, [(i,) for i in range(len(classes))])


def cross_double_schedule(n_qubits: int) -> SectorSchedule:
    """Alpha matching x beta matching x rotation; each (alpha pair, beta pair) once."""
    if n_qubits % 2:
        raise ValueError("n_qubits must be even")
    half = n_qubits // 2
    matchings = circle_matchings(half)
    classes, ids = [], []
    for ia, amatch in enumerate(matchings):
        for ib, bmatch in enumerate(matchings):
            bshift = [(p + half, q + half) for p, q in bmatch]
            size = len(amatch)
            for rho in range(size):
                classes.append([amatch[i] + bshift[(i + rho) % size] for i in range(size)])
                ids.append((ia, ib, rho))
    return SectorSchedule(classes, ids)


def triple_schedule(n_qubits: int) -> SectorSchedule:
    """3-subset Baranyai classes over all spin orbitals (padded when 3 does not divide N).

    Each class is used twice, once per blue/red half.
    """
    sched = baranyai_partition(n_qubits, 3)
    classes = [list(c) for c in sched.classes]
    return SectorSchedule(classes, [(i,) for i in range(len(classes))])


def spin_predicted_counts(n_qubits: int) -> int:
    """Dense-case double-excitation group count with spin factorisation."""
    if n_qubits % 2:
        raise ValueError("n_qubits must be even")
    half = n_qubits // 2
    return predicted_class_count(half, 4) + comb(half, 2) * predicted_class_count(half, 2)


def unfactorized_double_count(n_qubits: int) -> int:
    return predicted_class_count(n_qubits, 4)


def predicted_total_groups(n_qubits: int) -> int:
    """Doubles (spin-factorised) + both triple halves + the diagonal group."""
    return spin_predicted_counts(n_qubits) + 2 * predicted_class_count(n_qubits, 3) + 1


# --- pipeline ------------------------------------------------------------


def verify_groups(groups: Iterable[CommutingGroup]) -> list[int]:
    """Indices of groups that are not mutually commuting."""
    return [i for i, g in enumerate(groups) if not all_commute(g.paulis())]


def partition_hamiltonian(
    terms: Iterable[ExcitationTerm],
    n_qubits: int,
    constant: float = 0.0,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[CommutingGroup]:
    """Partition the Hamiltonian's Pauli strings into verified commuting groups.

    Identical strings arising from several terms are merged; each string is
    placed in the first group (in sector order) that contains it.
    """
    terms = list(terms)
    if n_qubits % 2:
        raise ValueError("spin-blocked layout needs an even qubit count")
    merged = {
        (wp.string.x, wp.string.z): wp
        for wp in hamiltonian_strings(terms, n_qubits, constant, threshold)
    }
    classes = classify_terms(terms, n_qubits)

    # item = (sector, index set) -> string keys and originating terms
    items: dict[tuple[str, tuple[int, ...]], set] = defaultdict(set)
    item_terms: dict[tuple[str, tuple[int, ...]], list] = defaultdict(list)
    for tc, tlist in classes.items():
        for t in tlist:
            strings = jw_excitation(t, n_qubits)
            if tc.sector == "diagonal":
                continue
            if tc.sector == "triple":
                for wp in strings:
                    sector = "triple-" + triple_color(wp.string, tc.active_indices)
                    items[(sector, tc.active_indices)].add((wp.string.x, wp.string.z))
                    if t not in item_terms[(sector, tc.active_indices)]:
                        item_terms[(sector, tc.active_indices)].append(t)
                continue
            sector = "cross-double" if tc.sector == "cross-double" else "pure-spin"
            items[(sector, tc.active_indices)].update((wp.string.x, wp.string.z) for wp in strings)
            item_terms[(sector, tc.active_indices)].append(t)

    schedules = {}
    if any(s == "pure-spin" for s, _ in items):
        schedules["pure-spin"] = pure_spin_schedule(n_qubits)
    if any(s == "cross-double" for s, _ in items):
        schedules["cross-double"] = cross_double_schedule(n_qubits)
    if any(s.startswith("triple") for s, _ in items):
        ts = triple_schedule(n_qubits)
        schedules["triple-blue"] = schedules["triple-red"] = ts

    groups: list[CommutingGroup] = []
    assigned: set[tuple[int, int]] = set()

    diag_keys = sorted(k for k in merged if k[0] == 0)
    if diag_keys:
        diag_terms = [t for tc, tl in classes.items() if tc.sector == "diagonal" for t in tl]
        groups.append(
            CommutingGroup(n_qubits, "diagonal", (0,), [merged[k] for k in diag_keys], diag_terms)
        )
        assigned.update(diag_keys)

    for sector in SECTOR_ORDER[1:]:
        present = sorted(s for sec, s in items if sec == sector)
        if not present:
            continue
        sched = schedules[sector]
        positions = schedule_positions(sched.classes)
        for packed in greedy_pack(present, sched.classes, positions):
            keys = []
            gterms = []
            for s in packed:
                for k in sorted(items[(sector, s)]):
                    if k in merged and k not in assigned:
                        assigned.add(k)
                        keys.append(k)
                gterms.extend(item_terms[(sector, s)])
            if not keys:
                continue
            sid = sched.ids[positions[frozenset(packed[0])][0]]
            groups.append(
                CommutingGroup(n_qubits, sector, sid, [merged[k] for k in keys], gterms, list(packed))
            )

    leftover = set(merged) - assigned
    if leftover:
        raise GroupingError(f"{len(leftover)} strings were not placed in any group")
    bad = verify_groups(groups)
    if bad:
        raise GroupingError(f"groups {bad[:5]} are not mutually commuting")
    return groups


def sector_counts(groups: Iterable[CommutingGroup]) -> dict[str, int]:
    counts = {s: 0 for s in SECTOR_ORDER}
    for g in groups:
        counts[g.sector] = counts.get(g.sector, 0) + 1
    return counts
