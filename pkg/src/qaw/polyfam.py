"""Orthogonal polynomial families defined by three-term recurrences.

Two scalings of each family live side by side.  The "continuous" scaling
(lowercase names: ``hermite_h``, ``asc_Q``, ``b_small``) keeps the variable
in [-1, 1]-type intervals and is the classical convention; the
"probabilistic" scaling (uppercase: ``hermite_H``, ``asc_P``, ``b_big``)
absorbs a factor sqrt(1-q)/2 into the variable so the q -> 1 limit lands on
the monic Hermite polynomials without renormalizing.  The bridge between the
two scalings is exercised by the test suite.

All recurrences start from p_{-1} = 0, p_0 = 1 and are evaluated by forward
iteration; closed forms are used only as cross-checks.  Like the rest of the
package, everything is generic over the scalar field, so Fraction inputs
give exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .qcore import DomainError, q_binomial, q_bracket, q_factorial, qval

__all__ = [
    "DEGREE_CAP",
    "RecurrenceSpec",
    "hermite_h", "hermite_h_seq",
    "hermite_H", "hermite_H_seq",
    "asc_Q", "asc_Q_seq",
    "asc_P", "asc_P_seq",
    "b_big", "b_big_seq",
    "b_small", "b_small_seq",
    "chebyshev_U", "chebyshev_U_seq",
    "linearize_HH",
    "bh_expand_B",
    "product_HB",
    "I_nm", "i_nm_closed",
    "connection_P_from_BH",
    "connection_H_from_P",
]

# Forward recurrences hold exactly for any degree, but in floating point the
# iterates lose digits slowly; beyond this cap we refuse rather than degrade.
DEGREE_CAP = 64


def _check_degree(n):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    if n > DEGREE_CAP:
        raise DomainError(
            f"degree {n} exceeds the cap {DEGREE_CAP}; floating recurrences "
            "are not validated past it"
        )


@dataclass(frozen=True)
class RecurrenceSpec:
    """Three-term recurrence p_{k+1} = (alpha(k) x + beta(k)) p_k - gamma(k) p_{k-1}.

    Initial conditions are always p_{-1} = 0, p_0 = 1.  gamma is never
    evaluated at k = 0 (its multiplier p_{-1} vanishes), so families whose
    gamma(0) is formally singular, e.g. through a q**(k-1) factor at q = 0,
    are safe.
    """

    alpha: Callable
    beta: Callable
    gamma: Callable

    def values(self, n, x):
        """Return the list [p_0(x), ..., p_n(x)]."""
        _check_degree(n)
        out = [1 + 0 * x]
        prev = 0 * x
        cur = out[0]
        for k in range(n):
            nxt = (self.alpha(k) * x + self.beta(k)) * cur
            if k > 0:
                nxt = nxt - self.gamma(k) * prev
            prev, cur = cur, nxt
            out.append(cur)
        return out

    def evaluate(self, n, x):
        return self.values(n, x)[-1]


def _zero(_k):
    return 0


def hermite_h_seq(n, x, q):
    """Continuous q-Hermite values [h_0(x), ..., h_n(x)].

    h_{k+1} = 2 x h_k - (1 - q**k) h_{k-1}.  The base is not range checked,
    so the recurrence can be run formally (for instance at base 1/q, which
    the b_small inversion identity needs).
    """
    q = qval(q)
    spec = RecurrenceSpec(lambda k: 2, _zero, lambda k: 1 - q**k)
    return spec.values(n, x)


def hermite_h(n, x, q):
    """Continuous q-Hermite polynomial h_n(x | q)."""
    return hermite_h_seq(n, x, q)[-1]


def hermite_H_seq(n, x, q):
    """Rescaled q-Hermite values; H_{k+1} = x H_k - [k]_q H_{k-1}.

    At q = 1 the bracket is k and these are the monic (probabilistic)
    Hermite polynomials.
    """
    q = qval(q)
    spec = RecurrenceSpec(lambda k: 1, _zero, lambda k: q_bracket(k, q))
    return spec.values(n, x)


def hermite_H(n, x, q):
    """Rescaled q-Hermite polynomial H_n(x | q), monic."""
    return hermite_H_seq(n, x, q)[-1]


def asc_Q_seq(n, x, a, b, q):
    """Al-Salam-Chihara values in the continuous scaling.

    Q_{k+1} = (2x - (a+b) q**k) Q_k - (1 - a b q**(k-1))(1 - q**k) Q_{k-1}.
    Complex parameter pairs are evaluated in complex arithmetic; see asc_Q
    for the conjugate-pair collapse to real values.
    """
    q = qval(q)
    spec = RecurrenceSpec(
        lambda k: 2,
        lambda k: -(a + b) * q**k,
        lambda k: (1 - a * b * q ** (k - 1)) * (1 - q**k),
    )
    return spec.values(n, x)


def asc_Q(n, x, a, b, q):
    """Al-Salam-Chihara polynomial Q_n(x | a, b, q).

    For b = conj(a) and real x the value is real; the imaginary roundoff
    residue is checked against 1e-12 * (1 + |value|) and truncated.
    """
    val = asc_Q_seq(n, x, a, b, q)[-1]
    if isinstance(val, complex) and not isinstance(x, complex):
        if _is_conjugate_pair(a, b):
            return real_part(val)
    return val


def asc_P_seq(n, x, y, rho, q):
    """Al-Salam-Chihara values in the probabilistic scaling.

    P_{k+1} = (x - rho y q**k) P_k - (1 - rho**2 q**(k-1)) [k]_q P_{k-1}.
    At q = 1 this family is (1-rho^2)^{n/2} H_n((x - rho y)/sqrt(1-rho^2)),
    the conditional-normal Hermite polynomials.
    """
    q = qval(q)
    spec = RecurrenceSpec(
        lambda k: 1,
        lambda k: -rho * y * q**k,
        lambda k: (1 - rho * rho * q ** (k - 1)) * q_bracket(k, q),
    )
    return spec.values(n, x)


def asc_P(n, x, y, rho, q):
    """Rescaled Al-Salam-Chihara polynomial P_n(x | y, rho, q), monic."""
    return asc_P_seq(n, x, y, rho, q)[-1]


def b_big_seq(n, y, q):
    """Values of the auxiliary family B_n in the probabilistic scaling.

    B_{k+1} = -q**k y B_k + q**(k-1) [k]_q B_{k-1}.  These are, up to an
    explicit sign and power of q, q^{-1}-Hermite polynomials; they appear as
    connection coefficients between the P and H families.
    """
    q = qval(q)
    spec = RecurrenceSpec(
        lambda k: -(q**k),
        _zero,
        lambda k: -(q ** (k - 1)) * q_bracket(k, q),
    )
    return spec.values(n, y)


def b_big(n, y, q):
    """Auxiliary polynomial B_n(y | q)."""
    return b_big_seq(n, y, q)[-1]


def b_small_seq(n, y, q):
    """Continuous-scaling values of the auxiliary family.

    b_{k+1} = -2 q**k y b_k + q**(k-1) (1 - q**k) b_{k-1}, so that
    (-1)**n q**(-C(n,2)) b_n(y | q) = h_n(y | 1/q).
    """
    q = qval(q)
    spec = RecurrenceSpec(
        lambda k: -2 * q**k,
        _zero,
        lambda k: -(q ** (k - 1)) * (1 - q**k),
    )
    return spec.values(n, y)


def b_small(n, y, q):
    """Auxiliary polynomial b_n(y | q) in the continuous scaling."""
    return b_small_seq(n, y, q)[-1]


def chebyshev_U_seq(n, x):
    """Chebyshev polynomials of the second kind, U_{k+1} = 2x U_k - U_{k-1}."""
    spec = RecurrenceSpec(lambda k: 2, _zero, lambda k: 1)
    return spec.values(n, x)


def chebyshev_U(n, x):
    """Chebyshev polynomial of the second kind U_n(x)."""
    return chebyshev_U_seq(n, x)[-1]


def _is_conjugate_pair(a, b):
    a = complex(a)
    b = complex(b)
    return abs(b - a.conjugate()) <= 1e-14 * (1 + abs(a))


def real_part(value, rel_tol=1e-12):
    """Collapse a complex value that must be real analytically.

    The imaginary part has to be roundoff noise: anything above
    rel_tol * (1 + |value|) raises DomainError instead of being dropped.
    """
    if not isinstance(value, complex):
        return value
    if abs(value.imag) > rel_tol * (1 + abs(value)):
        raise DomainError(
            f"value expected to be real has imaginary residue {value.imag!r}"
        )
    return value.real


def linearize_HH(n, m, q):
    """Coefficients of the product formula for two H polynomials.

    Returns [c_0, ..., c_min(n,m)] with
    H_n H_m = sum_j c_j H_{n+m-2j} and c_j = [m,j]_q [n,j]_q [j]_q!.
    """
    _check_degree(n)
    _check_degree(m)
    return [
        q_binomial(m, j, q) * q_binomial(n, j, q) * q_factorial(j, q)
        for j in range(min(n, m) + 1)
    ]


def bh_expand_B(n, q):
    """Coefficients of B_n in the H basis.

    Returns [c_0, ..., c_floor(n/2)] with B_n = sum_k c_k H_{n-2k}.  The
    powers of q are combined into the single exponent C(n,2) - k(n-k), which
    is nonnegative for every admissible k, so q = 0 is safe.
    """
    _check_degree(n)
    q = qval(q)
    sign = (-1) ** n
    out = []
    for k in range(n // 2 + 1):
        exponent = math.comb(n, 2) - k * (n - k)
        coeff = (
            q_binomial(n, k, q)
            * q_binomial(n - k, k, q)
            * q_factorial(k, q)
            * q**exponent
        )
        out.append(sign * coeff)
    return out


def product_HB(m, n, q):
    """Coefficients of the product H_m B_n in the H basis.

    Returns [c_0, ..., c_floor((n+m)/2)] with
    H_m B_n = sum_i c_i H_{n+m-2i}.  Terms with i > n vanish through the
    Gaussian binomial and are emitted as exact zeros.
    """
    _check_degree(n)
    _check_degree(m)
    q = qval(q)
    sign = (-1) ** n
    out = []
    for i in range((n + m) // 2 + 1):
        if i > n:
            out.append(0)
            continue
        exponent = math.comb(n, 2) - i * (n - i)
        coeff = (
            q_binomial(n, i, q)
            * q_binomial(n + m - i, i, q)
            * q_factorial(i, q)
            * q**exponent
        )
        out.append(sign * coeff)
    return out


def I_nm(n, m, x, q):
    """Binomial convolution of the B and H families at a single point.

    Evaluates sum_i [n,i]_q B_{n-i}(x) H_{i+m}(x) directly from the defining
    sum; the closed form lives in i_nm_closed so the two stay independent.
    """
    _check_degree(n)
    _check_degree(m)
    B = b_big_seq(n, x, q)
    H = hermite_H_seq(n + m, x, q)
    total = 0
    for i in range(n + 1):
        total = total + q_binomial(n, i, q) * B[n - i] * H[i + m]
    return total


def i_nm_closed(n, m, x, q):
    """Closed form of the B/H binomial convolution.

    Zero when n > m; otherwise (-1)**n q**C(n,2) [m]_q!/[m-n]_q! H_{m-n}(x).
    """
    _check_degree(n)
    _check_degree(m)
    if n > m:
        return 0
    q = qval(q)
    ratio = q_factorial(m, q) / q_factorial(m - n, q)
    return (-1) ** n * q ** math.comb(n, 2) * ratio * hermite_H(m - n, x, q)


def connection_P_from_BH(n, x, y, rho, q):
    """P_n(x | y, rho, q) assembled from the B and H families.

    Evaluates sum_j [n,j]_q rho**(n-j) B_{n-j}(y) H_j(x), which must agree
    with asc_P pointwise.
    """
    _check_degree(n)
    B = b_big_seq(n, y, q)
    H = hermite_H_seq(n, x, q)
    total = 0
    for j in range(n + 1):
        total = total + q_binomial(n, j, q) * rho ** (n - j) * B[n - j] * H[j]
    return total


def connection_H_from_P(n, x, y, rho, q):
    """H_n(x | q) assembled from the P family with parameter roles reversed.

    Evaluates sum_j [n,j]_q rho**(n-j) H_{n-j}(y) P_j(x | y, rho, q).
    """
    _check_degree(n)
    H = hermite_H_seq(n, y, q)
    P = asc_P_seq(n, x, y, rho, q)
    total = 0
    for j in range(n + 1):
        total = total + q_binomial(n, j, q) * rho ** (n - j) * H[n - j] * P[j]
    return total
