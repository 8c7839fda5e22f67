"""Dense statevector reference for direct, grouped and sampled expectation values.

State index bit ``n-1-q`` is qubit ``q`` (qubit 0 most significant), the same
ordering as :func:`pauli.to_matrix`.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .diag_circuit import DiagonalForm, DiagonalizationError
from .fermion_jw import WeightedPauli
from .pauli import CliffordCircuit, PauliString, apply_circuit, to_matrix
from .spin_groups import CommutingGroup

MAX_QUBITS = 14


def _check_size(n: int):
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the statevector limit of {MAX_QUBITS}")


def _state_mask(mask: int, n: int) -> int:
    out = 0
    for q in range(n):
        if (mask >> q) & 1:
            out |= 1 << (n - 1 - q)
    return out


def _parity(indices: np.ndarray, mask: int) -> np.ndarray:
    return (np.bitwise_count(indices & mask) & 1).astype(np.int64)


def random_state(n_qubits: int, seed: int | np.random.Generator) -> np.ndarray:
    _check_size(n_qubits)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return v / np.linalg.norm(v)


def basis_state(n_qubits: int, bits: str | int) -> np.ndarray:
    """``bits`` as a label like ``"0101"`` (qubit 0 first) or a state index."""
    _check_size(n_qubits)
    idx = int(bits, 2) if isinstance(bits, str) else bits
    v = np.zeros(1 << n_qubits, dtype=complex)
    v[idx] = 1
    return v


def apply_pauli(p: PauliString, state: np.ndarray) -> np.ndarray:
    n = p.n_qubits
    idx = np.arange(state.size)
    x, z = _state_mask(p.x, n), _state_mask(p.z, n)
    # X^x Z^z |b> = (-1)^{z.b} |b ^ x>
    signs = 1 - 2 * _parity(idx, z)
    out = np.empty_like(state)
    out[idx ^ x] = signs * state
    return (1j ** p.phase_exp) * out


def expectation_direct(strings: Sequence[WeightedPauli], state: np.ndarray) -> float:
    if not strings:
        return 0.0
    _check_size(strings[0].string.n_qubits)
    total = 0j
    for wp in strings:
        total += wp.weight * np.vdot(state, apply_pauli(wp.string, state))
    if abs(total.imag) > 1e-10 * max(1.0, abs(total.real)):
        raise ArithmeticError(f"non-real expectation {total}")
    return float(total.real)


def apply_circuit_state(circuit: CliffordCircuit, state: np.ndarray) -> np.ndarray:
    n = circuit.n_qubits
    psi = state.reshape((2,) * n).copy()
    s2 = 1 / np.sqrt(2)
    for g in circuit.gates:
        if g.kind == "CNOT":
            sl = [slice(None)] * n
            sl[g.control] = 1
            sub = psi[tuple(sl)]
            t = g.target - (g.target > g.control)
            psi[tuple(sl)] = np.flip(sub, axis=t).copy()
            continue
        q = g.qubit
        a = np.take(psi, 0, axis=q)
        b = np.take(psi, 1, axis=q)
        if g.kind == "H":
            new0, new1 = s2 * (a + b), s2 * (a - b)
        else:  # RX90 = [[1, -i], [-i, 1]] / sqrt2
            new0, new1 = s2 * (a - 1j * b), s2 * (b - 1j * a)
        psi = np.stack([new0, new1], axis=q)
    return psi.reshape(-1)


def _diag_values(form: DiagonalForm, weights: Sequence[float], n: int) -> np.ndarray:
    """f(b) = sum_i w_i s_i <b|D_i|b> over all basis states."""
    idx = np.arange(1 << n)
    f = np.zeros(1 << n)
    for (_, d, s), w in zip(form, weights):
        f += w * s * (1 - 2 * _parity(idx, _state_mask(d.z, n)))
    return f


def _weights(group) -> list[float]:
    return [wp.weight for wp in group.strings]


def _check_plan(group: CommutingGroup, circuit: CliffordCircuit, form: DiagonalForm):
    if [p.label for p in form.originals] != [wp.label for wp in group.strings]:
        raise DiagonalizationError("diagonal form does not match the group strings")
    for p in form.originals:
        if not apply_circuit(p, circuit).is_diagonal:
            raise DiagonalizationError(f"unverified circuit: {p.label} stays off-diagonal")


def expectation_grouped(
    groups: Sequence[CommutingGroup],
    plans: Sequence[tuple[CliffordCircuit, DiagonalForm]],
    state: np.ndarray,
) -> float:
    """Sum over groups of w * sign * <U psi| D |U psi>, using basis probabilities only."""
    if len(groups) != len(plans):
        raise ValueError("one (circuit, form) plan per group required")
    total = 0.0
    for g, (circ, form) in zip(groups, plans):
        _check_size(g.n_qubits)
        _check_plan(g, circ, form)
        probs = np.abs(apply_circuit_state(circ, state)) ** 2
        total += float(probs @ _diag_values(form, _weights(g), g.n_qubits))
    return total


def sample_grouped(
    groups: Sequence[CommutingGroup],
    plans: Sequence[tuple[CliffordCircuit, DiagonalForm]],
    state: np.ndarray,
    shots_per_group: int | None,
    seed: int = 0,
    batch: int = 4096,
) -> tuple[float, float]:
    """Shot-sampled estimate and its standard error.

    Shots are drawn in batches and folded into running sums, as a device
    stream would be.  ``shots_per_group=None`` returns the analytic value.
    """
    if shots_per_group is None:
        return expectation_grouped(groups, plans, state), 0.0
    if shots_per_group < 1:
        raise ValueError("shots_per_group must be >= 1")
    rng = np.random.default_rng(seed)
    estimate, var = 0.0, 0.0
    for g, (circ, form) in zip(groups, plans):
        _check_plan(g, circ, form)
        probs = np.abs(apply_circuit_state(circ, state)) ** 2
        probs /= probs.sum()
        f = _diag_values(form, _weights(g), g.n_qubits)
        s1 = s2 = 0.0
        left = shots_per_group
        while left:
            m = min(batch, left)
            outcomes = rng.choice(probs.size, size=m, p=probs)
            vals = f[outcomes]
            s1 += float(vals.sum())
            s2 += float((vals**2).sum())
            left -= m
        mean = s1 / shots_per_group
        estimate += mean
        if shots_per_group > 1:
            sample_var = max(s2 / shots_per_group - mean**2, 0.0) * shots_per_group / (shots_per_group - 1)
            var += sample_var / shots_per_group
    return estimate, float(np.sqrt(var))


def dense_matrix(strings: Sequence[WeightedPauli]) -> np.ndarray:
    n = strings[0].string.n_qubits
    out = np.zeros((1 << n, 1 << n), dtype=complex)
    for wp in strings:
        out += wp.weight * to_matrix(wp.string)
    return out
