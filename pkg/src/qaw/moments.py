"""Conditional q-Hermite moments and the density expansion built from them.

For the Markov triple (Y, X, Z) whose law is assembled from the densities in
``densities`` (Y stationary, X given Y at correlation rho1, Z given X at
correlation rho2), the conditional moment

    c_n(y, z) = E[ H_n(X | q) | Y = y, Z = z ]

is a polynomial of total degree n in (y, z).  Three routes to it live here:

* ``c_n_main``      a double sum over q-Hermite products in y and z,
* ``c_n_via_P``     a single sum mixing q-Hermite and Al-Salam-Chihara
                    polynomials; shares no sub-expressions with c_n_main,
                    so agreement of the two is a meaningful check,
* ``c_n_gaussian``  the q = 1 closed form via ordinary Hermite polynomials.

``alpha_coeff`` gives the coefficient of H_j(y) H_m(z) in c_n, and
``phi_expansion_partial`` sums the resulting expansion of the two-sided
conditional density phi_cond against H_i(x).  All the polynomial routines
run over a generic scalar field, so Fraction inputs give exact rationals.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .qcore import (
    DEFAULT_POLICY,
    DomainError,
    PoleError,
    TruncationError,
    TruncationPolicy,
    q_binomial,
    q_bracket,
    q_factorial,
    q_pochhammer,
    s_n,
)
from .polyfam import asc_P_seq, hermite_H, hermite_H_seq
from .awpoly import CondDensityParams
from .densities import f_N

__all__ = [
    "c_n_main",
    "c_n_via_P",
    "c_n_gaussian",
    "gamma_mk_partial",
    "gamma_ratio_closed",
    "alsalam_identity_residual",
    "alpha_coeff",
    "phi_expansion_partial",
    "expansion_terms_needed",
]


def _check_order(n):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {n!r}")


def _reject_gaussian(q):
    if q == 1:
        raise DomainError(
            "the general-q moment formulas degenerate at q = 1; use c_n_gaussian"
        )


def _guard_poch(value):
    if value == 0:
        raise PoleError("a Pochhammer denominator vanished in the moment formula")
    return value


@lru_cache(maxsize=4096)
def c_n_main(n, p: CondDensityParams):
    """Conditional moment via the double-sum form.

        c_n = (1/(r1 r2; q)_n) sum_k (-1)**k q**C(k,2) [n,2k] [2k,k] [k]!
              (rho1 rho2)**(2k) (rho1^2; q)_k (rho2^2; q)_k *
              sum_j [n-2k,j] (rho1^2 q^k; q)_j (rho2^2 q^k; q)_{n-2k-j}
                    rho1**(n-2k-j) rho2**j H_j(z) H_{n-2k-j}(y)

    with r1 = rho1**2, r2 = rho2**2.  Exact over Fraction inputs.
    """
    _check_order(n)
    q = p.q
    _reject_gaussian(q)
    r1, r2 = p.rho1, p.rho2
    r1sq, r2sq = r1 * r1, r2 * r2
    Hy = hermite_H_seq(n, p.y, q)
    Hz = hermite_H_seq(n, p.z, q)
    den = _guard_poch(q_pochhammer(r1sq * r2sq, q, n))
    total = 0
    for k in range(n // 2 + 1):
        pref = (
            (-1) ** k
            * q ** math.comb(k, 2)
            * q_binomial(n, 2 * k, q)
            * q_binomial(2 * k, k, q)
            * q_factorial(k, q)
            * (r1 * r2) ** (2 * k)
            * q_pochhammer(r1sq, q, k)
            * q_pochhammer(r2sq, q, k)
        )
        qk = q**k
        inner = 0
        for j in range(n - 2 * k + 1):
            inner = inner + (
                q_binomial(n - 2 * k, j, q)
                * q_pochhammer(r1sq * qk, q, j)
                * q_pochhammer(r2sq * qk, q, n - 2 * k - j)
                * r1 ** (n - 2 * k - j)
                * r2**j
                * Hz[j]
                * Hy[n - 2 * k - j]
            )
        total = total + pref * inner
    return total / den


def c_n_via_P(n, p: CondDensityParams):
    """Conditional moment via the single-sum Al-Salam-Chihara form.

        c_n = sum_s [n,s]_q rho1**(n-s) rho2**s (rho1^2; q)_s
              H_{n-s}(y) P_s(z | y, rho1 rho2, q) / (rho1^2 rho2^2; q)_s

    Equal to c_n_main; kept structurally independent as a cross-check.
    """
    _check_order(n)
    q = p.q
    _reject_gaussian(q)
    r1, r2 = p.rho1, p.rho2
    r1sq = r1 * r1
    R = r1sq * r2 * r2
    Hy = hermite_H_seq(n, p.y, q)
    Pz = asc_P_seq(n, p.z, p.y, r1 * r2, q)
    total = 0
    poch_r1 = 1
    poch_R = 1
    factor_r1 = r1sq
    factor_R = R
    for s in range(n + 1):
        if s > 0:
            poch_r1 = poch_r1 * (1 - factor_r1)
            poch_R = _guard_poch(poch_R * (1 - factor_R))
            factor_r1 = factor_r1 * q
            factor_R = factor_R * q
        total = total + (
            q_binomial(n, s, q) * r1 ** (n - s) * r2**s * poch_r1 * Hy[n - s] * Pz[s] / poch_R
        )
    return total


def c_n_gaussian(n, y, z, rho1, rho2):
    """Conditional moment at q = 1, through ordinary probabilistic Hermites.

    c_n = t**n H_n(u | 1) with t**2 = (rho1^2 + rho2^2 - 2 rho1^2 rho2^2) /
    (1 - rho1^2 rho2^2) and u the conditional mean divided by t.  When both
    correlations vanish the limit value is returned: 1 for n = 0, else 0.
    """
    _check_order(n)
    for name, r in (("rho1", rho1), ("rho2", rho2)):
        if not -1 < r < 1:
            raise DomainError(f"{name} must satisfy |rho| < 1, got {r!r}")
    if rho1 == 0 and rho2 == 0:
        return 1.0 if n == 0 else 0.0
    r1sq, r2sq = rho1 * rho1, rho2 * rho2
    den = 1 - r1sq * r2sq
    tsq = (r1sq + r2sq - 2 * r1sq * r2sq) / den
    mean = (y * rho1 * (1 - r2sq) + z * rho2 * (1 - r1sq)) / den
    t = math.sqrt(tsq)
    return t**n * hermite_H(n, mean / t, 1)


def gamma_mk_partial(m, k, x, y, rho, q, N):
    """N-term partial sum of the shifted q-Hermite kernel.

        gamma_{m,k}(x, y) = sum_{i >= 0} rho**i / [i]_q! * H_{i+m}(x) H_{i+k}(y)

    The unshifted case m = k = 0 is the Poisson-Mehler kernel, which resums
    to f_CN / f_N.
    """
    _check_order(m)
    _check_order(k)
    if N < 1:
        raise DomainError("the partial sum needs at least one term")
    top = N - 1
    Hx = hermite_H_seq(top + m, x, q)
    Hy = hermite_H_seq(top + k, y, q)
    total = 0
    weight = 1
    for i in range(N):
        if i > 0:
            weight = weight * rho / q_bracket(i, q)
        total = total + weight * Hx[i + m] * Hy[i + k]
    return total


def gamma_ratio_closed(m, k, x, y, rho, q):
    """Closed form of gamma_{m,k} / gamma_{0,0}.

        sum_{s=0}^{k} (-1)**s q**C(s,2) [k,s]_q rho**s H_{k-s}(y)
                      P_{m+s}(x | y, rho, q) / (rho^2; q)_{m+s}
    """
    _check_order(m)
    _check_order(k)
    Hy = hermite_H_seq(k, y, q)
    Px = asc_P_seq(m + k, x, y, rho, q)
    poch = [1]
    factor = rho * rho
    for _ in range(m + k):
        poch.append(_guard_poch(poch[-1] * (1 - factor)))
        factor = factor * q
    total = 0
    for s in range(k + 1):
        total = total + (
            (-1) ** s
            * q ** math.comb(s, 2)
            * q_binomial(k, s, q)
            * rho**s
            * Hy[k - s]
            * Px[m + s]
            / poch[m + s]
        )
    return total


def alsalam_identity_residual(m, x, y, rho, q):
    """Left minus right side of the Al-Salam-Chihara reflection identity.

        P_m(y | x, rho, q) / (rho^2; q)_m
          - sum_{s=0}^{m} (-1)**s [m,s]_q q**C(s,2) rho**s H_{m-s}(y)
                          P_s(x | y, rho, q) / (rho^2; q)_s

    Identically zero; returned as a residual so tests can assert exactness.
    """
    _check_order(m)
    poch = [1]
    factor = rho * rho
    for _ in range(m):
        poch.append(_guard_poch(poch[-1] * (1 - factor)))
        factor = factor * q
    lhs = asc_P_seq(m, y, x, rho, q)[m] / poch[m]
    Hy = hermite_H_seq(m, y, q)
    Px = asc_P_seq(m, x, y, rho, q)
    rhs = 0
    for s in range(m + 1):
        rhs = rhs + (
            (-1) ** s
            * q_binomial(m, s, q)
            * q ** math.comb(s, 2)
            * rho**s
            * Hy[m - s]
            * Px[s]
            / poch[s]
        )
    return lhs - rhs


def alpha_coeff(n, j, m, rho1, rho2, q):
    """Coefficient of H_j(y) H_m(z) in the conditional moment c_n.

    Zero when j + m > n or n - j - m is odd; otherwise, with
    k = (n - j - m)/2,

        (-1)**k q**C(k,2) [n,2k]_q [2k,k]_q [k]_q! [j+m,m]_q
        rho1**(n-m) rho2**(n-j) (rho1^2; q)_{k+m} (rho2^2; q)_{k+j}
        / (rho1^2 rho2^2; q)_n

    so that sum_{j,m} alpha_coeff(n, j, m) H_j(y) H_m(z) = c_n(y, z).
    """
    for name, idx in (("n", n), ("j", j), ("m", m)):
        if not isinstance(idx, int) or idx < 0:
            raise DomainError(f"index {name} must be a nonnegative integer, got {idx!r}")
    if j + m > n or (n - j - m) % 2 == 1:
        return 0
    k = (n - j - m) // 2
    r1sq, r2sq = rho1 * rho1, rho2 * rho2
    den = _guard_poch(q_pochhammer(r1sq * r2sq, q, n))
    return (
        (-1) ** k
        * q ** math.comb(k, 2)
        * q_binomial(n, 2 * k, q)
        * q_binomial(2 * k, k, q)
        * q_factorial(k, q)
        * q_binomial(j + m, m, q)
        * rho1 ** (n - m)
        * rho2 ** (n - j)
        * q_pochhammer(r1sq, q, k + m)
        * q_pochhammer(r2sq, q, k + j)
        / den
    )


def phi_expansion_partial(x, p: CondDensityParams, N, policy: TruncationPolicy = DEFAULT_POLICY):
    """N-term partial sum of the q-Hermite expansion of phi_cond.

        phi(x | y, z) = f_N(x) sum_{i >= 0} H_i(x) c_i(y, z) / [i]_q!

    Converges to phi_cond(x, p) as N grows; the rate is geometric in
    max(|rho1|, |rho2|).
    """
    q = p.q
    _reject_gaussian(q)
    if N < 1:
        raise DomainError("the partial sum needs at least one term")
    Hx = hermite_H_seq(N - 1, x, q)
    total = 0
    fact = 1
    for i in range(N):
        if i > 0:
            fact = fact * q_bracket(i, q)
        total = total + Hx[i] * c_n_main(i, p) / fact
    return f_N(x, q, policy).value * total


def expansion_terms_needed(p: CondDensityParams, rel_tol=1e-8, policy: TruncationPolicy = DEFAULT_POLICY):
    """A priori series length for phi_expansion_partial.

    Uses the bounds |H_i| <= s_i(q) (1-q)**(-i/2) on the support and
    |c_i| <= s_i(q) (1-q)**(-i/2) max(|rho1|, |rho2|)**i, giving the term
    bound s_i(q)**2 max(|rho1|,|rho2|)**i / (q; q)_i.  Returns the smallest
    N whose next term bound drops below rel_tol.
    """
    q = p.q
    _reject_gaussian(q)
    rho = max(abs(p.rho1), abs(p.rho2))
    if rho == 0:
        return 1
    poch = 1.0
    for i in range(policy.max_terms):
        if i > 0:
            poch *= 1 - float(q) ** i
        bound = float(s_n(i, q)) ** 2 * rho**i / abs(poch)
        if bound < rel_tol:
            return max(1, i)
    raise TruncationError(
        f"expansion bound did not drop below {rel_tol!r} within {policy.max_terms} terms"
    )
