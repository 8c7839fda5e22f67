"""Symplectic Pauli-string algebra.

A string on ``n`` qubits is stored as two integer bit masks (bit ``q`` is qubit
``q``) plus a phase exponent, so that the operator is

    i**phase_exp * prod_q X_q**x_q Z_q**z_q

i.e. a qubit with both bits set carries ``XZ = -iY``.  Labels are rendered
with qubit 0 leftmost.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_LABEL_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LABEL = {v: k for k, v in _LABEL_BITS.items()}


@dataclass(frozen=True)
class PauliString:
    n_qubits: int
    x: int
    z: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        full = (1 << self.n_qubits) - 1
        if self.x & ~full or self.z & ~full:
            raise ValueError("bit mask wider than n_qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def x_bits(self) -> list[int]:
        return [(self.x >> q) & 1 for q in range(self.n_qubits)]

    @property
    def z_bits(self) -> list[int]:
        return [(self.z >> q) & 1 for q in range(self.n_qubits)]

    @property
    def n_y(self) -> int:
        return (self.x & self.z).bit_count()

    @property
    def label(self) -> str:
        return "".join(
            _BITS_LABEL[((self.x >> q) & 1, (self.z >> q) & 1)] for q in range(self.n_qubits)
        )

    @property
    def label_phase(self) -> int:
        """Exponent k such that this operator equals i**k times the matrix of ``label``."""
        return (self.phase_exp - self.n_y) % 4

    @property
    def is_diagonal(self) -> bool:
        return self.x == 0

    def support(self) -> list[int]:
        mask = self.x | self.z
        return [q for q in range(self.n_qubits) if (mask >> q) & 1]

    def x_support(self) -> list[int]:
        return [q for q in range(self.n_qubits) if (self.x >> q) & 1]

    def hermitian(self) -> PauliString:
        """The same Pauli with phase chosen so it equals +label."""
        return PauliString(self.n_qubits, self.x, self.z, self.n_y)

    def to_json(self) -> dict:
        return {"label": self.label, "phase_exp": self.label_phase}

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __str__(self) -> str:
        prefix = ("", "i", "-", "-i")[self.label_phase]
        return prefix + self.label


def pauli_from_labels(labels: str, phase_exp: int = 0) -> PauliString:
    """Build a string from ``"IXYZ..."`` text; the result equals ``i**phase_exp`` times the label."""
    if not labels:
        raise ValueError("empty Pauli label")
    x = z = 0
    for q, ch in enumerate(labels):
        try:
            xb, zb = _LABEL_BITS[ch]
        except KeyError:
            raise ValueError(f"invalid Pauli character {ch!r} in {labels!r}") from None
        x |= xb << q
        z |= zb << q
    n_y = (x & z).bit_count()
    return PauliString(len(labels), x, z, phase_exp + n_y)


def pauli_from_json(obj: dict | str) -> PauliString:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return pauli_from_labels(obj["label"], obj.get("phase_exp", 0))


def _check_sizes(p: PauliString, q: PauliString):
    if p.n_qubits != q.n_qubits:
        raise ValueError(f"size mismatch: {p.n_qubits} vs {q.n_qubits} qubits")


def multiply(p: PauliString, q: PauliString) -> PauliString:
    _check_sizes(p, q)
    # moving Z^{z_p} past X^{x_q} costs a sign per overlapping qubit
    phase = p.phase_exp + q.phase_exp + 2 * (p.z & q.x).bit_count()
    return PauliString(p.n_qubits, p.x ^ q.x, p.z ^ q.z, phase)


def symplectic_product(p: PauliString, q: PauliString) -> int:
    _check_sizes(p, q)
    return ((p.x & q.z) ^ (q.x & p.z)).bit_count() & 1


def commutes(p: PauliString, q: PauliString) -> bool:
    return symplectic_product(p, q) == 0


def all_commute(strings: Sequence[PauliString]) -> bool:
    for i in range(len(strings)):
        pi = strings[i]
        for j in range(i + 1, len(strings)):
            if ((pi.x & strings[j].z) ^ (strings[j].x & pi.z)).bit_count() & 1:
                return False
    return True


@dataclass(frozen=True)
class CliffordGate:
    kind: str
    qubit: int | None = None
    control: int | None = None
    target: int | None = None

    def __post_init__(self):
        if self.kind in ("H", "RX90"):
            if self.qubit is None or self.qubit < 0:
                raise ValueError(f"{self.kind} needs a qubit index")
        elif self.kind == "CNOT":
            if self.control is None or self.target is None or min(self.control, self.target) < 0:
                raise ValueError("CNOT needs control and target")
            if self.control == self.target:
                raise ValueError("CNOT control equals target")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    def qubits(self) -> tuple[int, ...]:
        if self.kind == "CNOT":
            return (self.control, self.target)
        return (self.qubit,)

    def to_json(self) -> dict:
        if self.kind == "CNOT":
            return {"gate": "CNOT", "control": self.control, "target": self.target}
        return {"gate": self.kind, "qubit": self.qubit}

    @classmethod
    def from_json(cls, obj: dict) -> CliffordGate:
        if obj["gate"] == "CNOT":
            return cls("CNOT", control=obj["control"], target=obj["target"])
        return cls(obj["gate"], qubit=obj["qubit"])

    def qasm(self) -> str:
        if self.kind == "H":
            return f"h q[{self.qubit}];"
        if self.kind == "RX90":
            return f"rx(pi/2) q[{self.qubit}];"
        return f"cx q[{self.control}],q[{self.target}];"


def H(q: int) -> CliffordGate:
    return CliffordGate("H", qubit=q)


def RX90(q: int) -> CliffordGate:
    return CliffordGate("RX90", qubit=q)


def CNOT(control: int, target: int) -> CliffordGate:
    return CliffordGate("CNOT", control=control, target=target)


def apply_gate(p: PauliString, g: CliffordGate) -> PauliString:
    """Return ``g p g^dagger``."""
    n = p.n_qubits
    if max(g.qubits()) >= n:
        raise IndexError(f"gate {g} out of range for {n} qubits")
    x, z, phase = p.x, p.z, p.phase_exp
    if g.kind == "H":
        bit = 1 << g.qubit
        xb, zb = x & bit, z & bit
        if xb and zb:
            phase += 2  # H (XZ) H = ZX = -XZ
        x = (x & ~bit) | (bit if zb else 0)
        z = (z & ~bit) | (bit if xb else 0)
    elif g.kind == "RX90":
        # Rx(pi/2) = (I - iX)/sqrt2: X -> X, Z -> -iXZ (= -Y), XZ -> -iZ
        bit = 1 << g.qubit
        if z & bit:
            x ^= bit
            phase += 3
    else:
        c, t = 1 << g.control, 1 << g.target
        if x & c:
            x ^= t
        if z & t:
            z ^= c
    return PauliString(n, x, z, phase)


@dataclass(frozen=True)
class CliffordCircuit:
    n_qubits: int
    gates: tuple[CliffordGate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits()) >= self.n_qubits:
                raise IndexError(f"gate {g} out of range for {self.n_qubits} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def to_json(self) -> list[dict]:
        return [g.to_json() for g in self.gates]

    @classmethod
    def from_json(cls, n_qubits: int, gates: Iterable[dict]) -> CliffordCircuit:
        return cls(n_qubits, tuple(CliffordGate.from_json(g) for g in gates))

    def qasm(self) -> str:
        return "\n".join(g.qasm() for g in self.gates)


def apply_circuit(p: PauliString, circuit: CliffordCircuit | Sequence[CliffordGate]) -> PauliString:
    gates = circuit.gates if isinstance(circuit, CliffordCircuit) else circuit
    for g in gates:
        p = apply_gate(p, g)
    return p


# dense matrices, used by oracles and small-system checks

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def to_matrix(p: PauliString) -> np.ndarray:
    """Dense 2**n matrix, qubit 0 as the most significant tensor factor."""
    out = np.array([[1.0 + 0j]])
    for ch in p.label:
        out = np.kron(out, PAULI_MATRICES[ch])
    return (1j ** p.label_phase) * out
