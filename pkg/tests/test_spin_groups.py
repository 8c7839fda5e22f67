import itertools
from collections import Counter

import numpy as np
import pytest

from baranyai_grouping import ham_io
from baranyai_grouping.fermion_jw import ExcitationTerm, hamiltonian_strings, reduce_hermitian
from baranyai_grouping.pauli import all_commute, pauli_from_labels
from baranyai_grouping.spin_groups import (
    GroupingError,
    TermClass,
    classify_terms,
    cross_double_schedule,
    groups_from_json,
    groups_to_json,
    partition_hamiltonian,
    predicted_total_groups,
    pure_spin_schedule,
    sector_counts,
    spin_predicted_counts,
    triple_color,
    triple_schedule,
    unfactorized_double_count,
    verify_groups,
)


def random_sparse_terms(n_spatial, seed, n_one=6, n_two=12):
    rng = np.random.default_rng(seed)
    spec = ham_io.HamiltonianSpec(n_spatial)
    idx = lambda: int(rng.integers(1, n_spatial + 1))  # noqa: E731
    for _ in range(n_one):
        spec.set_one(idx(), idx(), float(rng.uniform(-1, 1)))
    for _ in range(n_two):
        spec.set_two(idx(), idx(), idx(), idx(), float(rng.uniform(-1, 1)))
    spec.core_energy = float(rng.uniform(-1, 1))
    return spec


class TestClassify:
    def test_cross_double(self):
        (t,) = reduce_hermitian({(0, 1, 5, 4): 1.0, (4, 5, 1, 0): 1.0})
        assert list(classify_terms([t], 8)) == [TermClass("cross-double", (0, 1, 4, 5))]

    def test_pure_spin(self):
        (t,) = reduce_hermitian({(0, 1, 3, 2): 1.0, (2, 3, 1, 0): 1.0})
        assert list(classify_terms([t], 8))[0].sector == "alpha-double"

    def test_number_operator(self):
        assert list(classify_terms([ExcitationTerm((2,), (2,), 1.0)], 8)) == [TermClass("diagonal", ())]

    def test_single_gets_padding(self):
        (key,) = classify_terms([ExcitationTerm((0,), (2,), 1.0)], 8)
        assert key.sector == "triple" and key.active_indices == (0, 1, 2)

    def test_single_reuses_existing_repeat(self):
        single = ExcitationTerm((0,), (2,), 1.0)
        double = ExcitationTerm((0, 5), (5, 2), 1.0)
        keys = set(classify_terms([single, double], 8))
        assert keys == {TermClass("triple", (0, 2, 5))}

    def test_spin_violation(self):
        with pytest.raises(ValueError):
            classify_terms([ExcitationTerm((0,), (4,), 1.0)], 8)


class TestTripleColor:
    BLUE = ["XIX", "YZY", "IXX", "ZYY", "XXI", "YYZ"]
    RED = ["XZX", "YIY", "ZXX", "IYY", "XXZ", "YYI"]

    def test_halves(self):
        assert {triple_color(pauli_from_labels(s), (0, 1, 2)) for s in self.BLUE} == {"blue"}
        assert {triple_color(pauli_from_labels(s), (0, 1, 2)) for s in self.RED} == {"red"}

    def test_each_half_commutes(self):
        assert all_commute([pauli_from_labels(s) for s in self.BLUE])
        assert all_commute([pauli_from_labels(s) for s in self.RED])
        assert not all_commute([pauli_from_labels(s) for s in self.BLUE + self.RED])

    def test_pattern_mismatch(self):
        with pytest.raises(GroupingError):
            triple_color(pauli_from_labels("XYI"), (0, 1, 2))


class TestSchedules:
    def test_pure_spin_n8(self):
        s = pure_spin_schedule(8)
        assert [sorted(c) for c in s.classes] == [[(0, 1, 2, 3), (4, 5, 6, 7)]]

    @pytest.mark.parametrize("n, count", [(12, 35), (16, 35)])
    def test_pure_spin_counts(self, n, count):
        assert len(pure_spin_schedule(n).classes) == count

    def test_cross_n8(self):
        s = cross_double_schedule(8)
        assert len(s.classes) == 18
        sets = [set(c) for c in s.classes]
        assert {(0, 1, 4, 5), (2, 3, 6, 7)} in sets
        assert {(0, 1, 6, 7), (2, 3, 4, 5)} in sets

    @pytest.mark.parametrize("n", [8, 10, 12, 16])
    def test_cross_covers_each_pair_product_once(self, n):
        half = n // 2
        s = cross_double_schedule(n)
        seen = Counter(x for c in s.classes for x in c)
        expect = {a + tuple(b + half for b in bb)
                  for a in itertools.combinations(range(half), 2)
                  for bb in itertools.combinations(range(half), 2)}
        assert set(seen) == expect and set(seen.values()) == {1}
        for c in s.classes:
            elems = [e for x in c for e in x]
            assert len(elems) == len(set(elems))
        if n == 16:
            assert len(s.classes) == 196

    def test_triple_counts(self):
        assert len(triple_schedule(9).classes) == 28
        assert len(triple_schedule(12).classes) == 55

    def test_predicted_counts(self):
        assert spin_predicted_counts(8) == 19
        assert spin_predicted_counts(16) == 231
        assert unfactorized_double_count(16) == 455
        assert predicted_total_groups(8) == 19 + 2 * 28 + 1  # 3 does not divide 8: embed in 9


class TestPartition:
    def test_h2(self):
        spec = ham_io.bundled("h2_sto3g")
        groups = partition_hamiltonian(ham_io.to_spin_orbital_terms(spec), 4, spec.core_energy)
        assert sum(len(g) for g in groups) == 15
        assert len(groups) <= 5
        assert len(groups) == 2

    def test_empty(self):
        assert partition_hamiltonian([], 4) == []

    def test_odd_qubits(self):
        with pytest.raises(ValueError):
            partition_hamiltonian([], 5)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_sparse_preserves_strings(self, seed):
        spec = random_sparse_terms(4, seed)
        terms = ham_io.to_spin_orbital_terms(spec)
        groups = partition_hamiltonian(terms, 8, spec.core_energy)
        assert verify_groups(groups) == []
        flat = sorted((wp.label, wp.weight) for g in groups for wp in g.strings)
        full = sorted((wp.label, wp.weight) for wp in hamiltonian_strings(terms, 8, spec.core_energy))
        assert flat == full

    def test_dense_n16_double_sectors(self):
        spec = ham_io.synth_hamiltonian("dense", 8)
        groups = partition_hamiltonian(ham_io.to_spin_orbital_terms(spec), 16, spec.core_energy)
        counts = sector_counts(groups)
        assert (counts["pure-spin"], counts["cross-double"]) == (35, 196)
        assert counts["diagonal"] == 1

    def test_json_round_trip(self):
        spec = ham_io.bundled("h2_sto3g")
        groups = partition_hamiltonian(ham_io.to_spin_orbital_terms(spec), 4, spec.core_energy)
        n, again = groups_from_json(groups_to_json(groups, 4))
        assert n == 4
        assert [[wp.label for wp in g.strings] for g in again] == [[wp.label for wp in g.strings] for g in groups]
        assert [g.sector for g in again] == [g.sector for g in groups]

    def test_verify_flags_bad_group(self):
        spec = ham_io.bundled("h2_sto3g")
        groups = partition_hamiltonian(ham_io.to_spin_orbital_terms(spec), 4, spec.core_energy)
        text = groups_to_json(groups, 4).replace('"XXYY"', '"XXYZ"', 1)
        _, corrupted = groups_from_json(text)
        assert verify_groups(corrupted)
