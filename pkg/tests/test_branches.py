"""Closed-form candidate branches and the transition exponents."""

import math

import numpy as np
import pytest

from pairphase import (
    Configuration,
    KernelParam,
    critical_exponent,
    energy,
    even_branch_energy,
    even_critical,
    odd_branch_energies,
    odd_critical_exact,
    phi,
)


def _stacked_odd_interior(m: int) -> Configuration:
    return Configuration([0.0] * m + [0.5] + [1.0] * m)


def _stacked_split(left: int, right: int) -> Configuration:
    return Configuration([0.0] * left + [1.0] * right)


class TestOddBranch:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    @pytest.mark.parametrize("q", [1.0, 1.45])
    def test_interior_formula_matches_direct_energy(self, m, q):
        b = odd_branch_energies(m, KernelParam(q))
        direct = energy(_stacked_odd_interior(m), KernelParam(q))
        assert b.e_int == pytest.approx(direct, abs=1e-12)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_endpoint_formula_matches_direct_energy(self, m):
        b = odd_branch_energies(m, KernelParam(1.2))
        direct = energy(_stacked_split(m, m + 1), KernelParam(1.2))
        assert b.e_end == pytest.approx(direct, abs=1e-12)

    def test_rejects_nonpositive_m(self):
        with pytest.raises(ValueError):
            odd_branch_energies(0, KernelParam(1.0))


class TestEvenBranch:
    @pytest.mark.parametrize("m", [2, 3, 4])
    @pytest.mark.parametrize("a", [0.1, 0.25, 0.4])
    def test_interior_formula_matches_direct_energy(self, m, a):
        kernel = KernelParam(1.1)
        b = even_branch_energy(m, a, kernel)
        config = Configuration([0.0] * (m - 1) + [a, 1.0 - a] + [1.0] * (m - 1))
        assert b.e_int == pytest.approx(energy(config, kernel), abs=1e-12)

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_endpoint_formula_matches_direct_energy(self, m):
        kernel = KernelParam(1.3)
        b = even_branch_energy(m, 0.2, kernel)
        assert b.e_end == pytest.approx(
            energy(_stacked_split(m, m), kernel), abs=1e-12
        )

    def test_degenerates_to_endpoint_split_at_zero_offset(self):
        for m in (2, 3, 6):
            b = even_branch_energy(m, 0.0, KernelParam(1.2))
            assert b.e_int == pytest.approx(b.e_end, abs=1e-12)

    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            even_branch_energy(1, 0.2, KernelParam(1.0))


class TestOddCritical:
    def test_defining_equation_residual(self):
        c = odd_critical_exact()
        residual = 2.0 * math.exp(-(2.0 ** (-c.value))) - (1.0 + math.exp(-1.0))
        assert abs(residual) < 1e-14

    def test_value(self):
        assert odd_critical_exact().value == pytest.approx(1.396363475, abs=5e-10)

    def test_branches_cross_at_the_exponent(self):
        q = odd_critical_exact().value
        for m in (1, 3, 5):
            b = odd_branch_energies(m, KernelParam(q))
            assert b.e_int == pytest.approx(b.e_end, abs=1e-12)
        below = odd_branch_energies(2, KernelParam(q - 1e-3))
        above = odd_branch_energies(2, KernelParam(q + 1e-3))
        assert below.e_int < below.e_end
        assert above.e_int > above.e_end


class TestEvenCritical:
    def test_smallest_even_case(self):
        c = even_critical(2)
        assert c.value == pytest.approx(1.062682507, abs=1e-6)
        assert c.method == "bisection_even"
        assert 0 < c.bracket_width <= 1e-9

    def test_monotone_in_k_and_below_odd(self):
        values = [even_critical(m).value for m in (2, 3, 4, 5)]
        assert values == sorted(values)
        assert values[-1] < odd_critical_exact().value

    def test_interior_margin_changes_sign_across_threshold(self):
        c = even_critical(3)
        assert phi(3, KernelParam(c.value - 0.05)) < -1e-6
        assert abs(phi(3, KernelParam(c.value + 0.05))) < 1e-9

    def test_phi_is_never_positive(self):
        for q in (1.0, 1.2, 1.39, 2.0):
            assert phi(2, KernelParam(q)) <= 1e-15

    def test_validation(self):
        with pytest.raises(ValueError):
            even_critical(1)
        with pytest.raises(ValueError):
            even_critical(2, solver_tolerance=0.0)
        with pytest.raises(ValueError):
            phi(1, KernelParam(1.0))


class TestCriticalExponentDispatch:
    def test_odd_k_uses_closed_form(self):
        c = critical_exponent(9)
        assert c.method == "exact_odd"
        assert c.k == 9
        assert c.bracket_width == 0.0

    def test_even_k_uses_bisection(self):
        c = critical_exponent(6)
        assert c.method == "bisection_even"
        assert c.value == pytest.approx(1.155601329, abs=1e-6)

    def test_rejects_small_k(self):
        with pytest.raises(ValueError):
            critical_exponent(2)

    def test_transition_matches_solver_behavior(self):
        # Just below the k=4 threshold the minimizer keeps interior points;
        # just above it parks everything on the endpoints.
        import warnings

        from pairphase import NonConvergenceWarning, minimize

        q4 = critical_exponent(4).value
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonConvergenceWarning)
            below = minimize(4, KernelParam(q4 - 0.02))
            above = minimize(4, KernelParam(q4 + 0.02))
        assert below.interior_active == 3
        assert np.array_equal(above.configuration.points, [0.0, 0.0, 1.0, 1.0])
