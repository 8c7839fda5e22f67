import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baranyai_grouping import ham_io
from baranyai_grouping.diag_circuit import (
    DiagonalizationError,
    circuit_unitary,
    diagonal_form,
    diagonalize_group,
    diagonalize_strings,
    verify_diagonalization,
)
from baranyai_grouping.pauli import CNOT, H, CliffordCircuit, apply_circuit, commutes, pauli_from_labels
from baranyai_grouping.spin_groups import partition_hamiltonian
from oracles import gate_matrix, label_matrix


def P(*labels):
    return [pauli_from_labels(s) for s in labels]


def test_chain_example():
    circ, form = diagonalize_group(P("IIYYXXII", "XXZZZZYY"))
    expected = [CNOT(3, 2), CNOT(4, 3), CNOT(5, 4), H(5), CNOT(1, 0), CNOT(6, 1), CNOT(7, 6), H(7)]
    assert list(circ.gates) == expected
    assert [d.label for d in form.diagonals] == ["IIZIIZII", "IIZIZIZZ"]


def test_generator_example():
    circ, form = diagonalize_group(P("XXI", "XIX", "ZZZ"))
    # the image set matches; which generator lands on which Z is convention dependent
    assert {d.label for d in form.diagonals} == {"IZI", "ZII", "IIZ"}
    blue = P("XIX", "YZY", "IXX", "ZYY", "XXI", "YYZ")
    assert all(apply_circuit(p, circ).is_diagonal for p in blue)
    assert verify_diagonalization(blue, circ).ok


def test_diagonal_group_needs_no_gates():
    circ, form = diagonalize_group(P("ZIZ", "IZI", "III"))
    assert len(circ) == 0 and form.signs == [1, 1, 1]


def test_non_commuting_input_raises():
    with pytest.raises(DiagonalizationError):
        diagonalize_group(P("XI", "ZI"))


def test_empty_group_rejected():
    with pytest.raises(ValueError):
        diagonalize_strings([])


def test_unitary_matches_gate_oracle():
    circ = CliffordCircuit(3, (H(0), CNOT(2, 1)))
    u = gate_matrix("CNOT", 3, control=2, target=1) @ gate_matrix("H", 3, qubit=0)
    assert np.allclose(circuit_unitary(circ), u)


def test_signs_against_dense_conjugation():
    strings = P("XX", "YY", "ZZ")
    circ, form = diagonalize_group(strings)
    u = circuit_unitary(circ)
    for p, d, s in form:
        assert np.allclose(u @ label_matrix(p.label) @ u.conj().T, s * label_matrix(d.label))


def test_wrong_circuit_is_reported():
    strings = P("XX", "YY")
    circ = CliffordCircuit(2, (H(0),))
    report = verify_diagonalization(strings, circ)
    assert not report.ok and report.failures
    with pytest.raises(DiagonalizationError):
        diagonal_form(strings, circ)


def commuting_set(draw, n, k):
    chosen = []
    letters = st.text("IXYZ", min_size=n, max_size=n)
    for _ in range(4 * k):
        p = pauli_from_labels(draw(letters))
        if all(commutes(p, q) and p.label != q.label for q in chosen):
            chosen.append(p)
        if len(chosen) == k:
            break
    return chosen


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_random_commuting_sets_dense(data):
    n = data.draw(st.integers(2, 5))
    strings = commuting_set(data.draw, n, data.draw(st.integers(1, 5)))
    circ, form = diagonalize_group(strings)
    report = verify_diagonalization(strings, circ)
    assert report.ok and report.dense_checked
    u = circuit_unitary(circ)
    for p in strings:
        img = u @ label_matrix(p.label) @ u.conj().T
        assert np.allclose(img, np.diag(np.diag(img)))


@pytest.mark.parametrize("name", ["h2_sto3g", "lih_sto3g"])
def test_molecule_groups_within_gate_bound(name):
    spec = ham_io.bundled(name)
    groups = partition_hamiltonian(ham_io.to_spin_orbital_terms(spec), spec.n_qubits, spec.core_energy)
    for g in groups:
        circ, _ = diagonalize_group(g)
        report = verify_diagonalization(g, circ)
        assert report.all_diagonal and report.within_bound, g.sector


def test_dense_synthetic_within_bound():
    spec = ham_io.synth_hamiltonian("dense", 5)
    groups = partition_hamiltonian(ham_io.to_spin_orbital_terms(spec), 10, spec.core_energy)
    worst = max(len(diagonalize_group(g)[0]) for g in groups)
    assert worst <= 30
