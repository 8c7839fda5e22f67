"""Baranyai partitions of k-subsets via staged integral max-flow, plus greedy packing.

Elements are 0-based.  When ``k`` does not divide ``n`` the ground set is
padded to the next multiple of ``k``; callers drop subsets that touch the
padding.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Hashable, Iterable, Sequence

SCHEDULE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SubsetSchedule:
    n: int
    k: int
    classes: tuple[tuple[tuple[int, ...], ...], ...]
    embedded_from: int

    @property
    def padding(self) -> int:
        return self.n - self.embedded_from

    def real_classes(self) -> list[list[tuple[int, ...]]]:
        """Classes with subsets touching padded elements removed."""
        m = self.embedded_from
        return [[s for s in cls if s[-1] < m] for cls in self.classes]

    def to_json(self) -> str:
        return json.dumps(
            {
                "version": SCHEDULE_FORMAT_VERSION,
                "n": self.n,
                "k": self.k,
                "embedded_from": self.embedded_from,
                "classes": [[list(s) for s in cls] for cls in self.classes],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> SubsetSchedule:
        obj = json.loads(text)
        if obj.get("version") != SCHEDULE_FORMAT_VERSION:
            raise ValueError(f"unsupported schedule version {obj.get('version')}")
        classes = tuple(tuple(tuple(s) for s in c) for c in obj["classes"])
        return cls(obj["n"], obj["k"], classes, obj.get("embedded_from", obj["n"]))


def embedded_size(n: int, k: int) -> int:
    r = n % k
    return n if r == 0 else n + k - r


def predicted_class_count(n: int, k: int) -> int:
    """C(n-1, k-1) when k | n, otherwise C(n+k-r-1, k-1) with r = n mod k."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    return comb(embedded_size(n, k) - 1, k - 1)


def smaller_embedding_count(n: int, k: int) -> int:
    """Class count when instead covering the subsets with C(n, r) smaller (n - r)-element schedules."""
    r = n % k
    return comb(n - r - 1, k - 1) * comb(n, r)


@dataclass
class FlowNetwork:
    """One stage: source -> class (cap 1) -> partial subset (cap = multiplicity) -> sink.

    ``arcs[c]`` lists ``(node, multiplicity)`` for class ``c``; ``sink_cap[a]``
    is the number of classes that must extend node ``a``.
    """

    nodes: list[Hashable]
    arcs: list[list[tuple[int, int]]]
    sink_cap: list[int]

    @property
    def n_classes(self) -> int:
        return len(self.arcs)


def solve_stage(net: FlowNetwork) -> list[int]:
    """Integral max flow; returns the chosen node per class.

    Ford-Fulkerson with BFS augmenting paths.  Paths of length one
    (class -> node -> sink) are taken first in node order, then longer paths
    that reroute already-assigned classes.
    """
    n_cls = net.n_classes
    residual = list(net.sink_cap)
    choice = [-1] * n_cls
    holders: list[list[int]] = [[] for _ in net.nodes]

    for c in range(n_cls):
        for a, mult in net.arcs[c]:
            if residual[a] > 0:
                choice[c] = a
                residual[a] -= 1
                holders[a].append(c)
                break

    for c in range(n_cls):
        if choice[c] >= 0:
            continue
        # BFS over nodes; from a full node hop to the classes using it
        parent_node: dict[int, tuple[int, int]] = {}  # node -> (class that reached it, previous node or -1)
        queue = deque()
        for a, _ in net.arcs[c]:
            if a not in parent_node:
                parent_node[a] = (c, -1)
                queue.append(a)
        end = -1
        visited_cls = {c}
        while queue:
            a = queue.popleft()
            if residual[a] > 0:
                end = a
                break
            for c2 in holders[a]:
                if c2 in visited_cls:
                    continue
                visited_cls.add(c2)
                for b, _ in net.arcs[c2]:
                    if b not in parent_node:
                        parent_node[b] = (c2, a)
                        queue.append(b)
        if end < 0:
            raise RuntimeError(
                f"stage flow {sum(x >= 0 for x in choice)} below class count {n_cls}"
            )
        residual[end] -= 1
        node = end
        while True:
            cls, prev = parent_node[node]
            if prev >= 0:
                holders[prev].remove(cls)
            holders[node].append(cls)
            choice[cls] = node
            if prev < 0:
                break
            node = prev
    return choice


def build_stage(classes: list[list[list[int]]], m: int, n: int, k: int) -> tuple[FlowNetwork, list[dict[int, list[int]]]]:
    """Network for adding element ``m`` to the partial classes.

    Also returns, per class, a map node -> slot indices holding that partial subset.
    """
    keys: set[tuple[int, ...]] = set()
    per_class = []
    for cls in classes:
        slots: dict[tuple[int, ...], list[int]] = {}
        for i, s in enumerate(cls):
            if len(s) < k:
                slots.setdefault(tuple(s), []).append(i)
        per_class.append(slots)
        keys.update(slots)
    nodes = sorted(keys, key=lambda a: (len(a), a))
    index = {a: i for i, a in enumerate(nodes)}
    arcs = []
    slot_maps = []
    for slots in per_class:
        row = sorted((index[a], len(ix)) for a, ix in slots.items())
        arcs.append(row)
        slot_maps.append({index[a]: ix for a, ix in slots.items()})
    sink_cap = [comb(n - m - 1, k - len(a) - 1) for a in nodes]
    return FlowNetwork(nodes, arcs, sink_cap), slot_maps


def _partition(n: int, k: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    n_cls = comb(n - 1, k - 1)
    per = n // k
    classes = [[[] for _ in range(per)] for _ in range(n_cls)]
    for m in range(n):
        net, slot_maps = build_stage(classes, m, n, k)
        choice = solve_stage(net)
        for c, a in enumerate(choice):
            classes[c][min(slot_maps[c][a])].append(m)
    return tuple(tuple(tuple(s) for s in cls) for cls in classes)


@lru_cache(maxsize=None)
def baranyai_partition(n: int, k: int) -> SubsetSchedule:
    # n < k is allowed: it embeds into a single class of one padded subset
    if n < 1 or k < 1:
        raise ValueError(f"invalid (n, k) = ({n}, {k})")
    n_emb = embedded_size(n, k)
    return SubsetSchedule(n_emb, k, _partition(n_emb, k), n)


def save_schedule(schedule: SubsetSchedule, path: str | Path):
    Path(path).write_text(schedule.to_json())


def load_schedule(path: str | Path) -> SubsetSchedule:
    return SubsetSchedule.from_json(Path(path).read_text())


def validate_schedule(schedule: SubsetSchedule) -> list[str]:
    """Empty list when the schedule is an exact Baranyai partition."""
    n, k = schedule.n, schedule.k
    errors = []
    if len(schedule.classes) != comb(n - 1, k - 1):
        errors.append(f"{len(schedule.classes)} classes, expected {comb(n - 1, k - 1)}")
    seen: dict[tuple[int, ...], int] = {}
    for ci, cls in enumerate(schedule.classes):
        elems = sorted(e for s in cls for e in s)
        if elems != list(range(n)) or any(len(s) != k for s in cls):
            errors.append(f"class {ci} is not a perfect cover")
        for s in cls:
            if s in seen:
                errors.append(f"subset {s} in classes {seen[s]} and {ci}")
            seen[tuple(s)] = ci
    missing = [s for s in combinations(range(n), k) if s not in seen]
    if missing:
        errors.append(f"{len(missing)} subsets missing, e.g. {missing[0]}")
    return errors


def schedule_positions(classes: Sequence[Sequence[Iterable[int]]]) -> dict[frozenset, tuple[int, int]]:
    pos = {}
    for ci, cls in enumerate(classes):
        for si, s in enumerate(cls):
            pos[frozenset(s)] = (ci, si)
    return pos


def greedy_pack(
    present: Iterable[Iterable[int]],
    schedule: SubsetSchedule | Sequence[Sequence[Iterable[int]]],
    positions: dict[frozenset, tuple[int, int]] | None = None,
) -> list[list[tuple[int, ...]]]:
    """First-fit packing of present subsets, visited in dense-schedule order.

    A subset joins the first group it is index-disjoint from; otherwise it
    opens a new group.  With every subset present this returns the
    schedule's classes.
    """
    classes = schedule.classes if isinstance(schedule, SubsetSchedule) else schedule
    if positions is None:
        positions = schedule_positions(classes)
    keyed = []
    seen = set()
    for s in present:
        key = frozenset(s)
        if key in seen:
            raise ValueError(f"duplicate subset {sorted(key)}")
        seen.add(key)
        try:
            keyed.append((positions[key], tuple(sorted(key))))
        except KeyError:
            raise ValueError(f"subset {sorted(key)} not in schedule") from None
    keyed.sort()

    groups: list[list[tuple[int, ...]]] = []
    used: list[int] = []
    for _, s in keyed:
        mask = 0
        for e in s:
            mask |= 1 << e
        for gi, u in enumerate(used):
            if not u & mask:
                groups[gi].append(s)
                used[gi] = u | mask
                break
        else:
            groups.append([s])
            used.append(mask)
    return groups
