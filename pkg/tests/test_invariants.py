"""Closed-form invariant values, family layout, Sudbery relations, Jacobian."""

import numpy as np
import pytest

from luinv.algebra import AlgebraElement, apply_local
from luinv.haar import haar_su2
from luinv.invariants import (
    check_relations,
    cumulant_invariant,
    gamma_factor,
    invariant_family,
    invariant_jacobian,
    jacobian_rank,
    sudbery_j,
    total_invariant_count,
)

from conftest import gaussian_state


def bell():
    return AlgebraElement(2, 2, np.array([1, 0, 0, 1]) / np.sqrt(2))


def ghz(n=3):
    c = np.zeros(2**n)
    c[0] = c[-1] = 1 / np.sqrt(2)
    return AlgebraElement(n, 2, c)


def w3():
    c = np.zeros(8)
    c[1] = c[2] = c[4] = 1 / np.sqrt(3)
    return AlgebraElement(3, 2, c)


class TestGamma:
    @pytest.mark.parametrize(
        "n,theta,value",
        [(2, 2, 1), (3, 2, 3), (3, 3, 8), (4, 2, 9), (4, 3, 32), (2, 1, 4), (4, 1, 16)],
    )
    def test_values(self, n, theta, value):
        assert gamma_factor(n, theta) == value


class TestClosedForm:
    def test_bell_quarter(self):
        assert cumulant_invariant(bell(), "11") == pytest.approx(0.25, abs=1e-12)

    def test_ghz_lifted_pair(self):
        for index in ("110", "101", "011"):
            assert cumulant_invariant(ghz(), index) == pytest.approx(0.125, abs=1e-12)

    def test_ghz_triple(self):
        assert cumulant_invariant(ghz(), "111") == pytest.approx(0.25, abs=1e-12)

    def test_w_triple(self):
        assert cumulant_invariant(w3(), "111") == pytest.approx(4 / 27, abs=1e-12)

    def test_theta_one_is_norm(self):
        psi = gaussian_state(np.random.default_rng(0), 3)
        n2 = float(np.sum(np.abs(psi.coeffs) ** 2))
        assert cumulant_invariant(psi, "100") == pytest.approx(n2, rel=1e-12)
        assert cumulant_invariant(psi, "001") == pytest.approx(n2, rel=1e-12)

    def test_nonnegative_clamp(self):
        # invariants are sums of weighted square moduli, never below zero
        rng = np.random.default_rng(1)
        for _ in range(20):
            psi = gaussian_state(rng, 3)
            for index in ("110", "111"):
                assert cumulant_invariant(psi, index) >= 0.0

    def test_lu_invariance(self):
        rng = np.random.default_rng(2)
        for trial in range(10):
            psi = gaussian_state(rng, 3)
            us = [haar_su2(np.random.default_rng(1000 + 3 * trial + k)) for k in range(3)]
            rot = apply_local(psi, us)
            for index in ("100", "110", "101", "011", "111"):
                a = cumulant_invariant(psi, index)
                b = cumulant_invariant(rot, index)
                assert abs(a - b) <= 1e-9 * max(1.0, a)

    def test_separable_product_factor(self):
        # I_{idx,0}(mu x |0>) = I_idx(mu)
        from luinv.algebra import tensor

        rng = np.random.default_rng(3)
        mu = gaussian_state(rng, 2)
        zero = AlgebraElement.from_terms(1, 2, {(0,): 1.0})
        psi = tensor(mu, zero)
        assert cumulant_invariant(psi, "110") == pytest.approx(
            cumulant_invariant(mu, "11"), rel=1e-12
        )

    def test_degree_homogeneity(self):
        rng = np.random.default_rng(20)
        psi = gaussian_state(rng, 3)
        lam = 1.7 - 0.4j
        scaled = AlgebraElement(3, 2, lam * psi.coeffs)
        for index in ("100", "110", "111"):
            theta = sum(int(c) for c in index)
            expect = abs(lam) ** (2 * theta) * cumulant_invariant(psi, index)
            assert cumulant_invariant(scaled, index) == pytest.approx(
                expect, rel=1e-12
            )

    def test_lower_triangular_scales_d(self):
        # g = [[1,0],[w,z]] on every site multiplies the cumulant
        # polynomial by z^theta
        from luinv.cumulants import cumulant_poly

        rng = np.random.default_rng(21)
        psi = gaussian_state(rng, 3)
        w, z = 0.3 - 0.2j, 0.8 + 0.35j
        g = np.array([[1, 0], [w, z]])
        rot = apply_local(psi, [g, g, g])
        for index in ("110", "111"):
            theta = sum(int(c) for c in index)
            d0 = cumulant_poly(index).evaluate(psi)
            d1 = cumulant_poly(index).evaluate(rot)
            assert d1 == pytest.approx(z**theta * d0, abs=1e-10)

    def test_permutation_equivariance(self):
        from luinv.algebra import permute_sites

        rng = np.random.default_rng(22)
        psi = gaussian_state(rng, 3)
        perm = (3, 1, 2)
        rolled = permute_sites(psi, perm)
        idx = (1, 1, 0)
        moved = tuple(idx[perm[p] - 1] for p in range(3))
        assert cumulant_invariant(rolled, moved) == pytest.approx(
            cumulant_invariant(psi, idx), rel=1e-12
        )


class TestFamily:
    def test_n4_layout(self):
        fam = invariant_family(4)
        assert len(fam) == 2**4 - 4
        assert fam[0] == (1, 0, 0, 0)
        assert fam[1:7] == [
            (1, 1, 0, 0),
            (1, 0, 1, 0),
            (0, 1, 1, 0),
            (1, 0, 0, 1),
            (0, 1, 0, 1),
            (0, 0, 1, 1),
        ]
        assert fam[-1] == (1, 1, 1, 1)

    def test_counts(self):
        assert total_invariant_count(3) == 6
        assert total_invariant_count(4) == 19
        assert total_invariant_count(5) == 48


class TestSudbery:
    def test_ghz_values(self):
        assert sudbery_j(ghz()) == pytest.approx((1.0, 0.5, 0.5, 0.5, 0.25), abs=1e-12)

    def test_which_selector(self):
        assert sudbery_j(ghz(), which=5) == pytest.approx(0.25, abs=1e-12)
        with pytest.raises(ValueError):
            sudbery_j(ghz(), which=6)

    def test_relations_random(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            psi = gaussian_state(rng, 3)
            for name, lhs, rhs in check_relations(psi):
                assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs)), name

    def test_relations_ghz(self):
        for name, lhs, rhs in check_relations(ghz()):
            assert abs(lhs - rhs) <= 1e-12, name


class TestJacobian:
    def test_rank_three_qubits(self):
        rng = np.random.default_rng(5)
        for _ in range(3):
            psi = gaussian_state(rng, 3)
            assert jacobian_rank(psi) == 5

    def test_rank_two_qubits(self):
        rng = np.random.default_rng(6)
        psi = gaussian_state(rng, 2)
        assert jacobian_rank(psi) == 2

    def test_rank_collapses_on_basis_state(self):
        # only the norm row survives: every theta >= 2 gradient vanishes
        # because each monomial keeps a zero amplitude to first order
        psi = AlgebraElement.from_terms(3, 2, {(0, 0, 0): 1.0})
        assert jacobian_rank(psi) == 1

    def test_jacobian_shape(self):
        psi = gaussian_state(np.random.default_rng(7), 2)
        jac = invariant_jacobian(psi)
        assert jac.shape == (len(invariant_family(2)), 2 * 4)

    def test_bad_step_rejected(self):
        with pytest.raises(ValueError):
            invariant_jacobian(gaussian_state(np.random.default_rng(8), 2), step=0.0)
