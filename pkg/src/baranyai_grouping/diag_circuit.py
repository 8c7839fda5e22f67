"""Clifford circuits that diagonalise a commuting group with a linear number of gates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fermion_jw import WeightedPauli
from .pauli import CNOT, RX90, CliffordCircuit, CliffordGate, H, PauliString, apply_circuit, apply_gate, to_matrix
from .spin_groups import CommutingGroup


class DiagonalizationError(RuntimeError):
    pass


@dataclass
class DiagonalForm:
    """Per input string: the diagonal image (phase stripped) and its sign."""

    originals: list[PauliString]
    diagonals: list[PauliString]
    signs: list[int]

    def __iter__(self):
        return iter(zip(self.originals, self.diagonals, self.signs))


def _strings_of(group) -> list[PauliString]:
    if isinstance(group, CommutingGroup):
        return group.paulis()
    out = []
    for item in group:
        out.append(item.string if isinstance(item, WeightedPauli) else item)
    return out


def _sort_key(p: PauliString):
    xs = p.x_support()
    largest = xs[-1] if xs else (p.support()[-1] if p.support() else -1)
    return (largest, p.label)


def diagonalize_strings(strings: Sequence[PauliString]) -> CliffordCircuit:
    """Diagonalise commuting strings, one chain of CNOTs plus one H/RX90 per unsolved string.

    Strings are visited by ascending largest active index.  Each string is
    conjugated by the gates gathered so far; if still off-diagonal, CNOTs
    link consecutive X/Y positions (control on the larger index), which
    leaves a single X or Y on the largest position, cleared by H or RX90.
    """
    if not strings:
        raise ValueError("empty group")
    n = strings[0].n_qubits
    gates: list[CliffordGate] = []
    for p in sorted(strings, key=_sort_key):
        cur = apply_circuit(p, gates)
        if cur.is_diagonal:
            continue
        xs = cur.x_support()
        for a, b in zip(xs, xs[1:]):
            g = CNOT(b, a)
            gates.append(g)
            cur = apply_gate(cur, g)
        last = xs[-1]
        g = RX90(last) if (cur.z >> last) & 1 else H(last)
        gates.append(g)
        cur = apply_gate(cur, g)
        if not cur.is_diagonal:
            raise DiagonalizationError(f"string {p.label} not diagonal after its pass")
    return CliffordCircuit(n, tuple(gates))


def diagonal_form(strings: Sequence[PauliString], circuit: CliffordCircuit) -> DiagonalForm:
    diags, signs = [], []
    for p in strings:
        d = apply_circuit(p.hermitian(), circuit)
        if not d.is_diagonal:
            raise DiagonalizationError(f"string {p.label} not diagonalised by circuit")
        if d.label_phase % 2:
            raise DiagonalizationError(f"non-Hermitian image for {p.label}")
        signs.append(1 if d.label_phase == 0 else -1)
        diags.append(d.hermitian())
    return DiagonalForm(list(strings), diags, signs)


def diagonalize_group(group) -> tuple[CliffordCircuit, DiagonalForm]:
    """Algorithm entry point for a :class:`CommutingGroup` or a list of strings."""
    strings = _strings_of(group)
    circuit = diagonalize_strings(strings)
    for p in strings:
        if not apply_circuit(p, circuit).is_diagonal:
            raise DiagonalizationError(f"string {p.label} left off-diagonal (group not commuting?)")
    return circuit, diagonal_form(strings, circuit)


def circuit_unitary(circuit: CliffordCircuit) -> np.ndarray:
    """Dense unitary, qubit 0 most significant (small circuits only)."""
    n = circuit.n_qubits
    dim = 1 << n
    u = np.eye(dim, dtype=complex)
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    rx = np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2)
    for g in circuit.gates:
        if g.kind == "CNOT":
            m = np.zeros((dim, dim), dtype=complex)
            cbit, tbit = 1 << (n - 1 - g.control), 1 << (n - 1 - g.target)
            for b in range(dim):
                m[b ^ tbit if b & cbit else b, b] = 1
        else:
            one = h if g.kind == "H" else rx
            m = np.array([[1.0 + 0j]])
            for q in range(n):
                m = np.kron(m, one if q == g.qubit else np.eye(2))
        u = m @ u
    return u


@dataclass
class DiagReport:
    all_diagonal: bool
    gate_count: int
    gate_bound: int
    signs: list[int]
    failures: list[str] = field(default_factory=list)
    dense_checked: bool = False

    @property
    def within_bound(self) -> bool:
        return self.gate_count <= self.gate_bound

    @property
    def ok(self) -> bool:
        return self.all_diagonal and self.within_bound and not self.failures


def verify_diagonalization(group, circuit: CliffordCircuit, dense_limit: int = 6) -> DiagReport:
    strings = _strings_of(group)
    n = circuit.n_qubits
    failures, signs = [], []
    for p in strings:
        d = apply_circuit(p.hermitian(), circuit)
        if not d.is_diagonal:
            failures.append(f"{p.label} -> {d}")
            signs.append(0)
            continue
        signs.append(1 if d.label_phase == 0 else -1)
    dense = False
    if n <= dense_limit and not failures:
        u = circuit_unitary(circuit)
        for p, s in zip(strings, signs):
            img = u @ to_matrix(p.hermitian()) @ u.conj().T
            expect = s * to_matrix(apply_circuit(p.hermitian(), circuit).hermitian())
            if not np.allclose(img, expect, atol=1e-10):
                failures.append(f"dense mismatch for {p.label}")
        dense = True
    all_diag = not any(s == 0 for s in signs)
    return DiagReport(all_diag, len(circuit), 3 * n, signs, failures, dense)
