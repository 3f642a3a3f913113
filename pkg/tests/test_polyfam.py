"""Recurrence families and inter-family identities: pinned values, exact checks."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaw import (
    DomainError,
    asc_P,
    asc_P_seq,
    asc_Q,
    b_big,
    b_big_seq,
    b_small,
    chebyshev_U,
    hermite_h,
    hermite_H,
    hermite_H_seq,
    map_params,
    CondDensityParams,
    q_bracket,
    q_factorial,
    s_n,
)
from qaw.polyfam import (
    DEGREE_CAP,
    I_nm,
    bh_expand_B,
    connection_H_from_P,
    connection_P_from_BH,
    i_nm_closed,
    linearize_HH,
    product_HB,
    real_part,
)
from helpers import leading_coefficient

small_qs = st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(9, 10), max_denominator=12)
small_xs = st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=8)


class TestHermiteH:
    def test_degree_zero(self):
        assert hermite_h(0, 0.3, 0.5) == 1

    def test_degree_one_doubles(self):
        assert hermite_h(1, 0.3, 0.5) == pytest.approx(0.6)

    def test_free_case_root(self):
        # h_2 = 4x^2 - 1 vanishes at 1/2
        assert hermite_h(2, 0.5, 0) == pytest.approx(0.0)

    def test_monic_H_values(self):
        assert hermite_H(2, 2.0, 0.5) == pytest.approx(3.0)
        assert hermite_H(3, 1.0, 0.5) == pytest.approx(-1.5)

    def test_q_one_probabilistic(self):
        # H_3(x|1) = x^3 - 3x
        assert hermite_H(3, 2.0, 1) == pytest.approx(2.0)

    def test_free_case_is_chebyshev(self):
        for n in range(13):
            for x in (0.3, -1.7, 2.0):
                assert hermite_H(n, x, 0) == pytest.approx(chebyshev_U(n, x / 2), abs=1e-12)

    def test_monic_exactly(self):
        q = Fraction(1, 2)
        for n in range(13):
            assert leading_coefficient(lambda x: hermite_H(n, x, q), n) == 1

    def test_bound_on_support(self):
        # sup |H_n| <= s_n(q) (1-q)^(-n/2) over the orthogonality interval
        for q in (0.0, 0.5, -0.5):
            half = 2 / math.sqrt(1 - q)
            xs = np.linspace(-half, half, 1001)
            for n in range(11):
                bound = float(s_n(n, q)) * (1 - q) ** (-n / 2)
                values = hermite_H(n, xs, q)
                assert np.max(np.abs(values)) <= bound * (1 + 1e-12)

    def test_scaling_bridge_to_h(self):
        for q in (0.5, -0.5, 0.3):
            for n in range(9):
                x = 0.7
                lhs = hermite_H(n, x, q)
                rhs = (1 - q) ** (-n / 2) * hermite_h(n, x * math.sqrt(1 - q) / 2, q)
                assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            hermite_H(DEGREE_CAP + 1, 0.5, 0.5)

    def test_array_input_matches_scalar(self):
        xs = np.array([-1.0, 0.0, 0.25, 2.0])
        got = hermite_H(4, xs, 0.3)
        want = [hermite_H(4, float(x), 0.3) for x in xs]
        assert got == pytest.approx(want)


class TestAlSalamChihara:
    def test_q_zero(self):
        assert asc_Q(0, 0.1, 0.2, 0.3, 0.5) == 1

    def test_q_one_term(self):
        assert asc_Q(1, 0.1, 0.2, 0.3, 0.5) == pytest.approx(-0.3)

    def test_conjugate_pair_free_case(self):
        # Q_n(x|a,b,0) = U_n(x) - (a+b) U_{n-1}(x) + ab U_{n-2}(x)
        a, b = 0.5j, -0.5j
        assert asc_Q(2, 1.0, a, b, 0) == pytest.approx(3.25)
        for n in range(2, 8):
            x = 0.4
            want = chebyshev_U(n, x) - (a + b).real * chebyshev_U(n - 1, x) + (a * b).real * chebyshev_U(n - 2, x)
            assert asc_Q(n, x, a, b, 0) == pytest.approx(want, rel=1e-12)

    def test_P_monic_linear(self):
        assert asc_P(1, 1.0, 0.5, 0.4, 0.3) == pytest.approx(0.8)

    def test_P_monic_exactly(self):
        y, rho, q = Fraction(1, 3), Fraction(2, 5), Fraction(-1, 2)
        for n in range(13):
            assert leading_coefficient(lambda x: asc_P(n, x, y, rho, q), n) == 1

    def test_P_gaussian_collapse(self):
        for n in range(9):
            x, y, rho = 0.7, -0.3, 0.6
            s = math.sqrt(1 - rho * rho)
            want = s**n * hermite_H(n, (x - rho * y) / s, 1)
            assert asc_P(n, x, y, rho, 1) == pytest.approx(want, rel=1e-12, abs=1e-12)

    def test_P_Q_scaling_bridge(self):
        for q in (0.9, 0.5, 0.0, -0.5):
            prm = map_params(CondDensityParams(0.5, 0.4, 0.0, 0.0, q))
            for n in range(9):
                x = 0.8
                lhs = (1 - q) ** (n / 2) * asc_P(n, x, 0.5, 0.4, q)
                rhs = asc_Q(n, x * math.sqrt(1 - q) / 2, prm.a, prm.b, q)
                assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_rho_zero_reduces_to_H(self):
        for n in range(7):
            assert asc_P(n, 0.6, 0.5, 0.0, 0.4) == pytest.approx(hermite_H(n, 0.6, 0.4))


class TestAuxiliaryFamilies:
    def test_b_big_linear(self):
        assert b_big(1, 0.7, 0.5) == pytest.approx(-0.7)

    def test_b_big_free_case(self):
        # 1, -y, 1, then identically zero
        assert b_big(0, 0.9, 0) == 1
        assert b_big(1, 0.9, 0) == pytest.approx(-0.9)
        assert b_big(2, 0.9, 0) == pytest.approx(1.0)
        for n in range(3, 9):
            assert b_big(n, 0.9, 0) == pytest.approx(0.0)

    def test_b_big_q_one(self):
        # B_n(x|1) = i^n H_n(ix|1)
        for n in range(7):
            want = real_part((1j) ** n * hermite_H(n, 1j * 1.0, 1))
            assert b_big(n, 1.0, 1) == pytest.approx(want, abs=1e-12)
        assert b_big(2, 1.0, 1) == pytest.approx(2.0)

    def test_b_small_scaling_bridge(self):
        for q in (0.5, -0.5):
            for n in range(9):
                y = 0.3
                lhs = b_small(n, y, q)
                rhs = (1 - q) ** (n / 2) * b_big(n, 2 * y / math.sqrt(1 - q), q)
                assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_b_small_inversion_to_h(self):
        # (-1)^n q^(-C(n,2)) b_n(y|q) = h_n(y|1/q), formally past |q| < 1
        for q in (Fraction(1, 2), Fraction(4, 5)):
            for n in range(7):
                y = Fraction(1, 3)
                lhs = (-1) ** n * q ** (-math.comb(n, 2)) * b_small(n, y, q)
                assert lhs == hermite_h(n, y, 1 / q)

    def test_chebyshev_values(self):
        assert chebyshev_U(0, 0.9) == 1
        assert chebyshev_U(1, 0.5) == pytest.approx(1.0)
        assert chebyshev_U(2, 0.5) == pytest.approx(0.0)

    def test_chebyshev_trig_form(self):
        for n in range(9):
            theta = 0.7
            want = math.sin((n + 1) * theta) / math.sin(theta)
            assert chebyshev_U(n, math.cos(theta)) == pytest.approx(want, rel=1e-12)


class TestIdentityHelpers:
    def test_linearize_square_of_x(self):
        assert linearize_HH(1, 1, 0.5) == [1, 1]

    def test_linearize_degenerate(self):
        assert linearize_HH(0, 5, 0.5) == [1]

    def test_linearize_pinned(self):
        assert linearize_HH(2, 1, 0.5) == [1, 1.5]

    @given(q=small_qs, x=small_xs)
    @settings(max_examples=30)
    def test_linearize_pointwise_exact(self, q, x):
        for n in range(5):
            for m in range(5):
                H = hermite_H_seq(n + m, x, q)
                coeffs = linearize_HH(n, m, q)
                total = sum(c * H[n + m - 2 * j] for j, c in enumerate(coeffs))
                assert total == H[n] * H[m]

    def test_bh_expand_linear(self):
        assert bh_expand_B(1, 0.5) == [-1]
        assert bh_expand_B(0, 0.5) == [1]

    @given(q=small_qs, x=small_xs)
    @settings(max_examples=30)
    def test_bh_expand_pointwise_exact(self, q, x):
        for n in range(7):
            H = hermite_H_seq(n, x, q)
            coeffs = bh_expand_B(n, q)
            total = sum(c * H[n - 2 * k] for k, c in enumerate(coeffs))
            assert total == b_big(n, x, q)

    @given(q=small_qs, x=small_xs)
    @settings(max_examples=30)
    def test_product_HB_pointwise_exact(self, q, x):
        for m in range(1, 5):
            for n in range(1, 5):
                H = hermite_H_seq(n + m, x, q)
                coeffs = product_HB(m, n, q)
                total = sum(c * H[n + m - 2 * i] for i, c in enumerate(coeffs))
                assert total == hermite_H(m, x, q) * b_big(n, x, q)

    def test_product_HB_pinned(self):
        # H_1 B_1 = -x^2 = -(H_2 + H_0)
        assert product_HB(1, 1, Fraction(1, 2)) == [-1, -1]
        x = Fraction(1)
        H = hermite_H_seq(4, x, Fraction(0))
        total = sum(c * H[4 - 2 * i] for i, c in enumerate(product_HB(2, 2, Fraction(0))))
        assert total == hermite_H(2, x, Fraction(0)) * b_big(2, x, Fraction(0))

    def test_I_nm_vanishes_above_diagonal(self):
        assert I_nm(3, 1, 0.4, 0.5) == pytest.approx(0.0, abs=1e-14)

    def test_I_nm_single_term(self):
        assert I_nm(0, 2, 0.7, 0.3) == pytest.approx(hermite_H(2, 0.7, 0.3))

    def test_I_nm_pinned(self):
        assert I_nm(1, 1, 0.4, 0.5) == pytest.approx(-1.0)

    @given(q=small_qs, x=small_xs)
    @settings(max_examples=30)
    def test_I_nm_closed_form_exact(self, q, x):
        for n in range(5):
            for m in range(5):
                assert I_nm(n, m, x, q) == i_nm_closed(n, m, x, q)

    @given(q=small_qs, x=small_xs)
    @settings(max_examples=30)
    def test_I_nm_recursion_exact(self, q, x):
        # I_{n,m} = -sum_{k>=1} [m,k][n,k][k]! I_{n-k,m-k}
        from qaw import q_binomial

        for n in range(1, 5):
            for m in range(n, 6):
                rhs = -sum(
                    q_binomial(m, k, q) * q_binomial(n, k, q) * q_factorial(k, q) * I_nm(n - k, m - k, x, q)
                    for k in range(1, n + 1)
                )
                assert I_nm(n, m, x, q) == rhs

    def test_connection_linear(self):
        assert connection_P_from_BH(1, 1.0, 0.5, 0.4, 0.3) == pytest.approx(0.8)

    def test_connections_exact(self):
        x, y, rho, q = Fraction(3, 10), Fraction(-1, 5), Fraction(3, 5), Fraction(1, 2)
        for n in range(5):
            assert connection_P_from_BH(n, x, y, rho, q) == asc_P(n, x, y, rho, q)
            assert connection_H_from_P(n, x, y, rho, q) == hermite_H(n, x, q)

    def test_connection_sum_vanishes(self):
        # same-argument convolution of B against H is zero for n >= 1
        from qaw import q_binomial

        x, q = Fraction(2, 7), Fraction(-1, 2)
        for n in range(1, 13):
            B = b_big_seq(n, x, q)
            H = hermite_H_seq(n, x, q)
            total = sum(q_binomial(n, j, q) * B[n - j] * H[j] for j in range(n + 1))
            assert total == 0


class TestRealPart:
    def test_passes_reals_through(self):
        assert real_part(1.5) == 1.5

    def test_truncates_noise(self):
        assert real_part(2.0 + 1e-15j) == 2.0

    def test_rejects_genuine_imaginary(self):
        with pytest.raises(DomainError):
            real_part(1.0 + 0.1j)
