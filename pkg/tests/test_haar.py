"""Haar sampling, moment battery, and the twirl estimator."""

import numpy as np
import pytest

from luinv.algebra import AlgebraElement
from luinv.haar import (
    CHUNK,
    TwirlEstimate,
    haar_su2,
    haar_su2_batch,
    moment_battery,
    twirl_estimate,
)
from luinv.invariants import cumulant_invariant

from conftest import gaussian_state


class TestSampling:
    def test_special_unitary(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            g = haar_su2(rng)
            assert np.allclose(g @ g.conj().T, np.eye(2), atol=1e-12)
            assert np.linalg.det(g) == pytest.approx(1.0, abs=1e-12)

    def test_batch_matches_structure(self):
        gs = haar_su2_batch(np.random.default_rng(1), 1000)
        assert gs.shape == (1000, 2, 2)
        assert np.allclose(gs[:, 1, 0], -gs[:, 0, 1].conj())
        assert np.allclose(gs[:, 1, 1], gs[:, 0, 0].conj())

    def test_seeded_reproducibility(self):
        a = haar_su2_batch(np.random.Generator(np.random.Philox(key=7)), 10)
        b = haar_su2_batch(np.random.Generator(np.random.Philox(key=7)), 10)
        assert np.array_equal(a, b)


class TestMoments:
    def test_battery_within_five_se(self):
        rows = moment_battery(samples=50_000, seed=3)
        for a, b, c, e, est, expected, se in rows:
            if a == 0 and b == 0 and c == 0 and e == 0:
                assert est == pytest.approx(1.0)
                continue
            assert abs(est - expected) <= 5 * se, (a, b, c, e)

    def test_exact_moment_table(self):
        rows = moment_battery(samples=1000, seed=0)
        table = {(a, b, c, e): expected for a, b, c, e, _, expected, _ in rows}
        assert table[(1, 1, 0, 0)] == pytest.approx(0.5)  # E|u|^2
        assert table[(2, 2, 0, 0)] == pytest.approx(1 / 3)  # E|u|^4
        assert table[(1, 1, 1, 1)] == pytest.approx(1 / 6)  # E|u|^2|v|^2
        assert table[(3, 3, 0, 0)] == pytest.approx(1 / 4)
        assert table[(1, 0, 0, 1)] == 0.0  # unmatched conjugates

    def test_row_count(self):
        # all (a,b,c,e) with a+b+c+e <= 6
        rows = moment_battery(samples=100, seed=0)
        assert len(rows) == 210


class TestTwirl:
    def test_matches_closed_form(self):
        rng = np.random.default_rng(4)
        psi = gaussian_state(rng, 3)
        est = twirl_estimate(psi, "110", samples=60_000, seed=5)
        closed = cumulant_invariant(psi, "110")
        assert isinstance(est, TwirlEstimate)
        assert abs(est.mean - closed) <= 5 * est.std_error + 1e-12

    def test_degenerate_two_qubit_case(self):
        # for two qubits the full-support integrand is already invariant,
        # so the estimator collapses onto the exact value with ~zero spread
        psi = gaussian_state(np.random.default_rng(6), 2)
        est = twirl_estimate(psi, "11", samples=5_000, seed=7)
        assert est.mean == pytest.approx(cumulant_invariant(psi, "11"), abs=1e-12)

    def test_seed_determinism(self):
        psi = gaussian_state(np.random.default_rng(8), 3)
        a = twirl_estimate(psi, "111", samples=30_000, seed=9)
        b = twirl_estimate(psi, "111", samples=30_000, seed=9)
        assert a.mean == b.mean and a.std_error == b.std_error

    def test_chunking_invariant(self):
        # estimates must not depend on how samples split into chunks
        psi = gaussian_state(np.random.default_rng(10), 2)
        whole = twirl_estimate(psi, "11", samples=CHUNK + 123, seed=11)
        assert whole.samples == CHUNK + 123

    def test_theta_below_two_rejected(self):
        psi = gaussian_state(np.random.default_rng(12), 2)
        with pytest.raises(ValueError):
            twirl_estimate(psi, "10", samples=100, seed=0)

    def test_too_few_samples_rejected(self):
        psi = gaussian_state(np.random.default_rng(13), 2)
        with pytest.raises(ValueError):
            twirl_estimate(psi, "11", samples=1, seed=0)
