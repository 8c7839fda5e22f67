import itertools

import numpy as np
import pytest

from baranyai_grouping import ham_io
from baranyai_grouping.fermion_jw import hamiltonian_strings
from baranyai_grouping.ham_io import FcidumpError, HamiltonianSpec
from oracles import excitation_matrix, label_matrix

H2_FCI = -1.137270174660903  # pyscf FCI, STO-3G, R = 0.7414 A

SMALL = """ &FCI NORB=  2,NELEC= 2,MS2=0,
  ORBSYM=1,1,
  ISYM=1,
 &END
 0.5   1 1 1 1
 0.25  2 1 1 1
 0.1   2 1 2 1
 0.4   2 2 1 1
 0.6   2 2 2 2
 -1.2  1 1 0 0
 0.05  2 1 0 0
 -0.4  2 2 0 0
 -1.0  1 0 0 0
 0.7   0 0 0 0
"""


def spec_matrix(spec: HamiltonianSpec) -> np.ndarray:
    """Second-quantised H built straight from the integrals, spin-blocked ordering."""
    n, nq = spec.n_spatial, spec.n_qubits
    H = spec.core_energy * np.eye(1 << nq, dtype=complex)
    so = lambda p, spin: p - 1 + spin * n  # noqa: E731
    for (p, q), v in spec.one_body.items():
        for s in (0, 1):
            H += v * excitation_matrix([so(p, s)], [so(q, s)], nq)
    for (p, q, r, s), v in spec.two_body.items():
        for s1, s2 in itertools.product((0, 1), repeat=2):
            H += 0.5 * v * excitation_matrix([so(p, s1), so(r, s2)], [so(s, s2), so(q, s1)], nq)
    return H


def strings_matrix(strings, nq):
    return sum((wp.weight * label_matrix(wp.label) for wp in strings), np.zeros((1 << nq,) * 2, dtype=complex))


class TestFcidump:
    def test_parse_small(self):
        spec = ham_io.parse_fcidump(SMALL)
        assert (spec.n_spatial, spec.n_electrons, spec.core_energy) == (2, 2, 0.7)
        assert spec.two_body[(1, 2, 1, 1)] == 0.25
        assert spec.two_body[(1, 2, 1, 2)] == 0.1
        assert spec.one_body[(1, 2)] == 0.05
        assert len(spec.unique_two()) == 5

    def test_round_trip(self):
        spec = ham_io.parse_fcidump(SMALL)
        again = ham_io.parse_fcidump(ham_io.to_fcidump(spec))
        assert again.one_body == spec.one_body and again.two_body == spec.two_body
        assert again.core_energy == spec.core_energy

    def test_json_round_trip(self):
        spec = ham_io.parse_fcidump(SMALL)
        again = ham_io.from_json(ham_io.to_json(spec))
        assert again.one_body == spec.one_body and again.two_body == spec.two_body

    def test_fortran_exponent(self):
        spec = ham_io.parse_fcidump(SMALL.replace("0.7   0 0 0 0", "0.7D+00 0 0 0 0"))
        assert spec.core_energy == 0.7

    @pytest.mark.parametrize(
        "mutate, line",
        [
            (lambda t: t.replace(" 0.6   2 2 2 2", " 0.6   2 3 2 2"), 9),
            (lambda t: t.replace(" 0.6   2 2 2 2", " abc   2 2 2 2"), 9),
            (lambda t: t.replace(" 0.6   2 2 2 2", " 0.6   2 2"), 9),
            (lambda t: t.replace("NORB=  2", "NORB=  x"), 1),
            (lambda t: t.replace("&FCI", "&XYZ"), 1),
        ],
    )
    def test_errors_carry_line_numbers(self, mutate, line):
        with pytest.raises(FcidumpError) as exc:
            ham_io.parse_fcidump(mutate(SMALL))
        assert exc.value.line == line

    def test_load_by_suffix(self, tmp_path):
        spec = ham_io.parse_fcidump(SMALL)
        (tmp_path / "h.json").write_text(ham_io.to_json(spec))
        (tmp_path / "h.fcidump").write_text(SMALL)
        assert ham_io.load(tmp_path / "h.json").two_body == ham_io.load(tmp_path / "h.fcidump").two_body

    def test_json_rejects_bad_index(self):
        with pytest.raises(ValueError):
            ham_io.from_json('{"n_spatial": 2, "one_body": [[1, 3, 0.1]]}')


def test_two_body_orbit_has_eight_fold_symmetry():
    orbit = ham_io.two_body_orbit(1, 2, 3, 4)
    assert len(orbit) == 8
    assert {ham_io.canonical_two_body_key(*k) for k in orbit} == {ham_io.canonical_two_body_key(1, 2, 3, 4)}


def test_spin_orbital_terms_match_dense_oracle():
    spec = ham_io.parse_fcidump(SMALL)
    terms = ham_io.to_spin_orbital_terms(spec)
    strings = hamiltonian_strings(terms, spec.n_qubits, spec.core_energy)
    assert np.allclose(strings_matrix(strings, 4), spec_matrix(spec), atol=1e-12)


def test_synthetic_chain_matches_dense_oracle():
    spec = ham_io.synth_hamiltonian("chain", 3, width=1, seed=3)
    strings = hamiltonian_strings(ham_io.to_spin_orbital_terms(spec), 6, spec.core_energy)
    assert np.allclose(strings_matrix(strings, 6), spec_matrix(spec), atol=1e-12)


def test_h2_bundled():
    spec = ham_io.bundled("h2_sto3g")
    strings = hamiltonian_strings(ham_io.to_spin_orbital_terms(spec), 4, spec.core_energy)
    assert len(strings) == 15
    m = strings_matrix(strings, 4).real
    two_electron = [b for b in range(16) if bin(b).count("1") == 2]
    e0 = np.linalg.eigvalsh(m[np.ix_(two_electron, two_electron)])[0]
    assert e0 == pytest.approx(H2_FCI, abs=1e-8)


class TestSynth:
    def test_deterministic(self):
        a = ham_io.synth_hamiltonian("dense", 4, seed=11)
        b = ham_io.synth_hamiltonian("dense", 4, seed=11)
        c = ham_io.synth_hamiltonian("dense", 4, seed=12)
        assert a.two_body == b.two_body and a.two_body != c.two_body

    @pytest.mark.parametrize("w", [0, 1, 2])
    def test_chain_width(self, w):
        spec = ham_io.synth_hamiltonian("chain", 6, width=w)
        for key in list(spec.one_body) + list(spec.two_body):
            assert max(key) - min(key) <= w
        assert any(max(k) - min(k) == w for k in spec.two_body)

    def test_dense_is_full(self):
        spec = ham_io.synth_hamiltonian("dense", 3)
        assert len(spec.two_body) == 3**4 and len(spec.one_body) == 9

    def test_magnitudes(self):
        rng = ham_io.SplitMix64(5)
        vals = [rng.magnitude() for _ in range(1000)]
        assert all(0.01 <= abs(v) <= 1 for v in vals)
        assert any(v < 0 for v in vals) and any(v > 0 for v in vals)

    @pytest.mark.parametrize("kwargs", [dict(kind="dense", n_spatial=0), dict(kind="chain", n_spatial=3), dict(kind="ring", n_spatial=3)])
    def test_bad_arguments(self, kwargs):
        with pytest.raises(ValueError):
            ham_io.synth_hamiltonian(**kwargs)
