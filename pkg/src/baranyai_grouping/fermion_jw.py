"""Jordan-Wigner expansion of Hermitian-paired excitation operators."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .pauli import PauliString

DEFAULT_THRESHOLD = 1e-12


@dataclass(frozen=True)
class ExcitationTerm:
    """``coefficient * (op + op^dagger) / 2`` with op = a^dag_{c0} [a^dag_{c1}] a_{a0} [a_{a1}].

    Canonical form keeps creation indices ascending, annihilation indices
    descending, and stores the lexicographically smaller member of the
    Hermitian pair.  Self-adjoint operators (number-operator products)
    therefore contribute ``coefficient * op``.
    """

    creation: tuple[int, ...]
    annihilation: tuple[int, ...]
    coefficient: float

    def __post_init__(self):
        object.__setattr__(self, "creation", tuple(self.creation))
        object.__setattr__(self, "annihilation", tuple(self.annihilation))
        if len(self.creation) != len(self.annihilation) or len(self.creation) not in (1, 2):
            raise ValueError(f"unsupported excitation {self.creation}{self.annihilation}")

    @property
    def indices(self) -> tuple[int, ...]:
        return self.creation + self.annihilation

    @property
    def active(self) -> tuple[int, ...]:
        """Indices carrying X/Y after the mapping."""
        return tuple(sorted(set(self.creation) ^ set(self.annihilation)))

    @property
    def repeated(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.creation) & set(self.annihilation)))

    @property
    def arity(self) -> str:
        n_active = len(self.active)
        if n_active == 0:
            return "diagonal"
        if len(self.creation) == 1:
            return "single"
        return "repeated double" if n_active == 2 else "disjoint double"

    def is_canonical(self) -> bool:
        c, a = self.creation, self.annihilation
        if list(c) != sorted(set(c)) or list(a) != sorted(set(a), reverse=True):
            return False
        return (c, a) <= _conjugate_key(c, a)


@dataclass(frozen=True)
class WeightedPauli:
    string: PauliString
    weight: float

    @property
    def label(self) -> str:
        return self.string.label

    def to_json(self) -> dict:
        return {"label": self.string.label, "weight": self.weight}


def _sort_sign(idx: Iterable[int], reverse: bool = False) -> tuple[int, tuple[int, ...]]:
    """Sort with the permutation sign; sign 0 when an index repeats (Pauli exclusion)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, tuple(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if (idx[i] > idx[j]) != reverse:
                sign = -sign
    return sign, tuple(sorted(idx, reverse=reverse))


def canonical_order(creation, annihilation) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    s1, c = _sort_sign(creation)
    s2, a = _sort_sign(annihilation, reverse=True)
    return s1 * s2, c, a


def _conjugate_key(c: tuple[int, ...], a: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # (a+_i a+_j a_k a_l)^dag = a+_l a+_k a_j a_i, already canonical when the input is
    return tuple(reversed(a)), tuple(reversed(c))


def reduce_hermitian(
    raw_terms: Mapping[tuple[int, ...], float] | Iterable[tuple[tuple[int, ...], float]],
    threshold: float = DEFAULT_THRESHOLD,
    tol: float = 1e-9,
) -> list[ExcitationTerm]:
    """Merge raw ``a^dag ... a ...`` coefficients into canonical Hermitian-paired terms.

    Keys are ``(i, j)`` for ``a^dag_i a_j`` and ``(i, j, k, l)`` for
    ``a^dag_i a^dag_j a_k a_l``.
    """
    items = raw_terms.items() if isinstance(raw_terms, Mapping) else raw_terms
    acc: dict[tuple, float] = defaultdict(float)
    for idx, coeff in items:
        idx = tuple(idx)
        if len(idx) not in (2, 4):
            raise ValueError(f"raw term {idx} must have 2 or 4 indices")
        half = len(idx) // 2
        sign, c, a = canonical_order(idx[:half], idx[half:])
        if sign == 0:
            continue
        acc[(c, a)] += sign * float(coeff)

    out = []
    seen = set()
    for key in sorted(acc):
        if key in seen:
            continue
        conj = _conjugate_key(*key)
        seen.update((key, conj))
        if conj == key:
            coeff = acc[key]
        else:
            c1, c2 = acc[key], acc.get(conj, 0.0)
            if abs(c1 - c2) > tol * max(1.0, abs(c1), abs(c2)):
                raise ValueError(f"non-Hermitian input: {key} has {c1}, conjugate has {c2}")
            coeff = c1 + c2
        if abs(coeff) < threshold:
            continue
        rep = min(key, conj)
        out.append(ExcitationTerm(rep[0], rep[1], coeff))
    return out


# Ladder operators as Pauli sums keyed by (x, z) with complex coefficients.
# With the XZ convention, X -+ iY = X -+ i(i XZ) = X +- XZ, so
#   a^dag_j = Zchain (X_j + X_jZ_j)/2,   a_j = Zchain (X_j - X_jZ_j)/2.

def _ladder(j: int, dagger: bool) -> dict[tuple[int, int], complex]:
    chain = (1 << j) - 1
    bit = 1 << j
    s = 0.5 if dagger else -0.5
    return {(bit, chain): 0.5, (bit, chain | bit): s}


def _mul_sums(a: dict, b: dict) -> dict:
    out: dict[tuple[int, int], complex] = defaultdict(complex)
    for (x1, z1), c1 in a.items():
        for (x2, z2), c2 in b.items():
            sign = -1 if (z1 & x2).bit_count() & 1 else 1
            out[(x1 ^ x2, z1 ^ z2)] += sign * c1 * c2
    return out


def operator_sum(creation: Iterable[int], annihilation: Iterable[int]) -> dict[tuple[int, int], complex]:
    """Pauli expansion of ``a^dag_{c0} a^dag_{c1} ... a_{a0} a_{a1} ...`` in XZ form."""
    acc = {(0, 0): 1.0 + 0j}
    for j in creation:
        acc = _mul_sums(acc, _ladder(j, True))
    for j in annihilation:
        acc = _mul_sums(acc, _ladder(j, False))
    return acc


def jw_excitation(term: ExcitationTerm, n_qubits: int) -> list[WeightedPauli]:
    if max(term.indices) >= n_qubits or min(term.indices) < 0:
        raise IndexError(f"term {term.indices} out of range for {n_qubits} qubits")
    if not term.is_canonical():
        raise ValueError(f"non-canonical term {term.creation}{term.annihilation}")
    op = operator_sum(term.creation, term.annihilation)
    conj = operator_sum(*_conjugate_key(term.creation, term.annihilation))
    total: dict[tuple[int, int], complex] = defaultdict(complex)
    for k, v in op.items():
        total[k] += v
    for k, v in conj.items():
        total[k] += v

    out = []
    scale = 0.5 * term.coefficient
    for (x, z), c in sorted(total.items()):
        n_y = (x & z).bit_count()
        # X^x Z^z = i^{-n_y} * label matrix
        w = scale * c * (1j ** (-n_y % 4))
        if abs(w) <= 1e-14 * abs(term.coefficient):
            continue
        if abs(w.imag) > 1e-12 * max(1.0, abs(term.coefficient)):
            raise ArithmeticError(f"imaginary weight survived for term {term}")
        out.append(WeightedPauli(PauliString(n_qubits, x, z, n_y), w.real))
    return out


def hamiltonian_strings(
    terms: Iterable[ExcitationTerm],
    n_qubits: int,
    constant: float = 0.0,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[WeightedPauli]:
    """Full qubit Hamiltonian, identical strings merged, sorted by label."""
    acc: dict[tuple[int, int], float] = defaultdict(float)
    acc[(0, 0)] += constant
    for term in terms:
        for wp in jw_excitation(term, n_qubits):
            acc[(wp.string.x, wp.string.z)] += wp.weight
    out = [
        WeightedPauli(PauliString(n_qubits, x, z, (x & z).bit_count()), w)
        for (x, z), w in acc.items()
        if abs(w) >= threshold
    ]
    out.sort(key=lambda wp: wp.string.label)
    return out
