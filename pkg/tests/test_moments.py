"""Conditional moments: collapses, closed forms, kernel identities, expansion."""

import math
from fractions import Fraction

import pytest

from qaw import (
    CondDensityParams,
    DomainError,
    alpha_coeff,
    alsalam_identity_residual,
    c_n_gaussian,
    c_n_main,
    c_n_via_P,
    expansion_terms_needed,
    f_CN,
    f_N,
    gamma_mk_partial,
    gamma_ratio_closed,
    hermite_H,
    phi_cond,
    phi_expansion_partial,
    q_binomial,
    q_pochhammer,
)

from helpers import seeded_bundles

EXACT_P = CondDensityParams(
    Fraction(2, 5), Fraction(-3, 5), Fraction(1, 2), Fraction(7, 10), Fraction(1, 2)
)


class TestConditionalMoment:
    def test_degree_zero_is_one(self):
        p = CondDensityParams(0.4, 0.5, -0.6, 0.7, 0.5)
        assert c_n_main(0, p) == 1
        assert c_n_via_P(0, p) == 1

    def test_degree_one_closed_form(self):
        y, r1, z, r2, q = 0.4, 0.5, -0.6, 0.7, 0.3
        p = CondDensityParams(y, r1, z, r2, q)
        want = (r1 * (1 - r2**2) * y + r2 * (1 - r1**2) * z) / (1 - r1**2 * r2**2)
        assert c_n_main(1, p) == pytest.approx(want, rel=1e-14)

    def test_first_leg_uncorrelated(self):
        # rho1 = 0 decouples X from Y, leaving the one-step moment in z
        p = CondDensityParams(Fraction(1, 3), 0, Fraction(-2, 5), Fraction(1, 2), Fraction(3, 10))
        for n in range(9):
            want = Fraction(1, 2) ** n * hermite_H(n, Fraction(-2, 5), Fraction(3, 10))
            assert c_n_main(n, p) == want

    def test_second_leg_uncorrelated(self):
        p = CondDensityParams(Fraction(1, 3), Fraction(1, 2), Fraction(-2, 5), 0, Fraction(3, 10))
        for n in range(9):
            want = Fraction(1, 2) ** n * hermite_H(n, Fraction(1, 3), Fraction(3, 10))
            assert c_n_main(n, p) == want

    def test_two_routes_agree_exactly(self):
        for n in range(11):
            assert c_n_main(n, EXACT_P) == c_n_via_P(n, EXACT_P)

    def test_two_routes_agree_on_random_bundles(self):
        for p in seeded_bundles(4):
            for n in range(7):
                assert c_n_main(n, p) == pytest.approx(c_n_via_P(n, p), rel=1e-10, abs=1e-12)

    def test_swap_symmetry(self):
        for n in range(9):
            assert c_n_main(n, EXACT_P) == c_n_main(n, EXACT_P.swapped())

    def test_rejects_gaussian_limit(self):
        p = CondDensityParams(0.1, 0.5, 0.2, 0.5, 1)
        with pytest.raises(DomainError):
            c_n_main(2, p)
        with pytest.raises(DomainError):
            c_n_via_P(2, p)

    def test_rejects_bad_order(self):
        p = CondDensityParams(0.1, 0.5, 0.2, 0.5, 0.5)
        with pytest.raises(DomainError):
            c_n_main(-1, p)
        with pytest.raises(DomainError):
            c_n_via_P(2.5, p)


class TestGaussianMoment:
    def test_degree_one_is_conditional_mean(self):
        y, z, r1, r2 = 0.7, -1.1, 0.5, 0.3
        want = (y * r1 * (1 - r2**2) + z * r2 * (1 - r1**2)) / (1 - r1**2 * r2**2)
        assert c_n_gaussian(1, y, z, r1, r2) == pytest.approx(want, rel=1e-14)

    def test_degree_two_at_origin(self):
        assert c_n_gaussian(2, 0.0, 0.0, 0.5, 0.5) == pytest.approx(-0.4, rel=1e-14)

    def test_uncorrelated_limit(self):
        assert c_n_gaussian(0, 1.0, -2.0, 0.0, 0.0) == 1.0
        for n in range(1, 6):
            assert c_n_gaussian(n, 1.0, -2.0, 0.0, 0.0) == 0.0

    def test_rejects_bad_correlation(self):
        with pytest.raises(DomainError):
            c_n_gaussian(2, 0.0, 0.0, 1.0, 0.5)


class TestShiftedKernel:
    def test_uncorrelated_is_single_product(self):
        # rho = 0 kills every term past i = 0
        got = gamma_mk_partial(2, 1, 0.3, -0.4, 0.0, 0.5, 30)
        want = hermite_H(2, 0.3, 0.5) * hermite_H(1, -0.4, 0.5)
        assert got == want

    def test_unshifted_kernel_resums_to_density_ratio(self):
        x, y, rho, q = 0.3, -0.4, 0.5, 0.5
        got = gamma_mk_partial(0, 0, x, y, rho, q, 60)
        want = f_CN(x, y, rho, q).value / f_N(x, q).value
        assert got == pytest.approx(want, rel=1e-10)

    def test_ratio_matches_closed_form(self):
        x, y, rho, q = 0.3, -0.4, 0.5, 0.5
        ratio = gamma_mk_partial(1, 2, x, y, rho, q, 60) / gamma_mk_partial(0, 0, x, y, rho, q, 60)
        assert ratio == pytest.approx(gamma_ratio_closed(1, 2, x, y, rho, q), abs=1e-8)

    def test_closed_form_uncorrelated(self):
        got = gamma_ratio_closed(2, 1, 0.3, -0.4, 0.0, 0.5)
        assert got == pytest.approx(hermite_H(2, 0.3, 0.5) * hermite_H(1, -0.4, 0.5), rel=1e-14)

    def test_rejects_empty_partial_sum(self):
        with pytest.raises(DomainError):
            gamma_mk_partial(0, 0, 0.1, 0.2, 0.3, 0.5, 0)


class TestReflectionIdentity:
    def test_trivial_order(self):
        assert alsalam_identity_residual(0, 0.2, 0.5, 0.3, 0.5) == 0

    def test_float_point(self):
        assert alsalam_identity_residual(3, 0.2, 0.5, 0.3, 0.5) == pytest.approx(0.0, abs=1e-12)

    def test_exact_rational(self):
        args = (Fraction(1, 3), Fraction(-2, 5), Fraction(1, 2), Fraction(3, 10))
        for m in range(9):
            assert alsalam_identity_residual(m, *args) == 0


class TestExpansionCoefficients:
    def test_parity_and_range_zeros(self):
        assert alpha_coeff(3, 1, 1, 0.5, 0.4, 0.3) == 0
        assert alpha_coeff(2, 2, 1, 0.5, 0.4, 0.3) == 0

    def test_degree_one_coefficient(self):
        r1, r2, q = Fraction(1, 2), Fraction(2, 5), Fraction(1, 3)
        want = r1 * (1 - r2**2) / (1 - r1**2 * r2**2)
        assert alpha_coeff(1, 1, 0, r1, r2, q) == want

    def test_top_layer_product_form(self):
        # at j + m = n only the k = 0 layer contributes
        r1, r2, q = Fraction(1, 2), Fraction(2, 5), Fraction(1, 3)
        j, m = 2, 1
        n = j + m
        want = (
            q_binomial(n, m, q)
            * r1**j
            * r2**m
            * q_pochhammer(r1**2, q, m)
            * q_pochhammer(r2**2, q, j)
            / q_pochhammer(r1**2 * r2**2, q, n)
        )
        assert alpha_coeff(n, j, m, r1, r2, q) == want

    def test_swap_symmetry(self):
        r1, r2, q = Fraction(1, 2), Fraction(2, 5), Fraction(1, 3)
        for n in range(6):
            for j in range(n + 1):
                for m in range(n + 1):
                    assert alpha_coeff(n, j, m, r1, r2, q) == alpha_coeff(n, m, j, r2, r1, q)

    def test_reassembles_conditional_moment(self):
        y, r1, z, r2, q = EXACT_P.y, EXACT_P.rho1, EXACT_P.z, EXACT_P.rho2, EXACT_P.q
        Hy = [hermite_H(j, y, q) for j in range(7)]
        Hz = [hermite_H(m, z, q) for m in range(7)]
        for n in range(7):
            total = sum(
                alpha_coeff(n, j, m, r1, r2, q) * Hy[j] * Hz[m]
                for j in range(n + 1)
                for m in range(n + 1)
            )
            assert total == c_n_main(n, EXACT_P)

    def test_rejects_bad_indices(self):
        with pytest.raises(DomainError):
            alpha_coeff(2, -1, 0, 0.5, 0.4, 0.3)


class TestDensityExpansion:
    def test_uncorrelated_collapses_to_marginal(self):
        p = CondDensityParams(0.4, 0.0, -0.6, 0.0, 0.5)
        for x in (0.0, 0.7, -1.9):
            assert phi_expansion_partial(x, p, 5) == pytest.approx(f_N(x, 0.5).value, rel=1e-14)

    def test_forty_terms_hit_density(self):
        p = CondDensityParams(0.5, -0.3, 0.8, 0.4, 0.5)
        for x in (-1.5, 0.0, 0.6, 2.1):
            got = phi_expansion_partial(x, p, 40)
            assert got == pytest.approx(phi_cond(x, p).value, abs=1e-6)

    def test_error_shrinks_with_more_terms(self):
        p = CondDensityParams(0.5, -0.3, 0.8, 0.4, 0.5)
        x = 0.6
        exact = phi_cond(x, p).value
        errors = [abs(phi_expansion_partial(x, p, N) - exact) for N in (10, 20, 40)]
        assert errors[0] > errors[1] > errors[2]

    def test_rejects_gaussian_and_empty(self):
        with pytest.raises(DomainError):
            phi_expansion_partial(0.1, CondDensityParams(0.1, 0.5, 0.2, 0.5, 1), 10)
        with pytest.raises(DomainError):
            phi_expansion_partial(0.1, CondDensityParams(0.1, 0.5, 0.2, 0.5, 0.5), 0)


class TestTermBudget:
    def test_uncorrelated_needs_one_term(self):
        assert expansion_terms_needed(CondDensityParams(0.4, 0.0, -0.6, 0.0, 0.5)) == 1

    def test_budget_grows_as_tolerance_shrinks(self):
        p = CondDensityParams(0.4, 0.5, -0.6, 0.5, 0.5)
        loose = expansion_terms_needed(p, rel_tol=1e-4)
        tight = expansion_terms_needed(p, rel_tol=1e-10)
        assert 1 <= loose < tight

    def test_budget_is_sufficient(self):
        p = CondDensityParams(0.4, 0.3, -0.6, 0.25, 0.5)
        N = expansion_terms_needed(p, rel_tol=1e-8)
        x = 0.2
        assert abs(phi_expansion_partial(x, p, N) - phi_cond(x, p).value) < 1e-8
