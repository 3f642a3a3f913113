"""Scalar q-arithmetic primitives.

Everything in this module is generic over the scalar field of its inputs:
pass floats for fast evaluation, :class:`fractions.Fraction` values when an
identity has to hold exactly (the test suite proves several summation
identities this way, with residuals that are exactly zero), or complex
numbers where a product over complex arguments is required.

The one exception is the infinite product ``q_pochhammer_inf``, which is
inherently approximate: it truncates under an explicit tail bound controlled
by a :class:`TruncationPolicy` and therefore only makes sense in floating
point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DomainError",
    "PoleError",
    "TruncationError",
    "QParam",
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "qval",
    "q_bracket",
    "q_factorial",
    "q_binomial",
    "q_pochhammer",
    "q_pochhammer_inf",
    "multi_pochhammer",
    "s_n",
]


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PoleError(ArithmeticError):
    """A denominator factor vanished at a genuine pole of a formula."""


class TruncationError(RuntimeError):
    """A series or product could not reach its tolerance within the term cap."""


@dataclass(frozen=True)
class QParam:
    """Deformation base q, restricted to -1 < q <= 1.

    q = 1 is the Gaussian/Hermite branch; code that needs it dispatches to
    dedicated closed forms rather than taking limits of the |q| < 1 formulas.
    """

    q: float

    def __post_init__(self):
        if not (-1 < self.q <= 1):
            raise DomainError(f"base must satisfy -1 < q <= 1, got {self.q!r}")

    @property
    def is_gaussian_branch(self) -> bool:
        return self.q == 1


@dataclass(frozen=True)
class TruncationPolicy:
    """Controls truncation of infinite products and series.

    rel_tol bounds the relative size of the neglected tail; max_terms is a
    hard cap after which :class:`TruncationError` is raised instead of
    silently returning a bad value.
    """

    rel_tol: float = 1e-14
    max_terms: int = 10_000

    def __post_init__(self):
        if not 0 < self.rel_tol < 1:
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be positive, got {self.max_terms!r}")


DEFAULT_POLICY = TruncationPolicy()


def qval(q):
    """Unwrap a QParam, or pass a bare scalar through unchanged."""
    return q.q if isinstance(q, QParam) else q


def _check_order(n):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")


def q_bracket(n, q):
    """The q-number [n]_q = 1 + q + ... + q**(n-1).

    Equals n at q = 1 and, for n >= 1, equals 1 at q = 0.  [0]_q = 0.
    """
    _check_order(n)
    q = qval(q)
    total = 0 * q
    for _ in range(n):
        total = total * q + 1
    return total


def q_factorial(n, q):
    """The q-factorial [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1."""
    _check_order(n)
    q = qval(q)
    bracket = 0 * q
    total = 1 + 0 * q
    for _ in range(n):
        bracket = bracket * q + 1
        total = total * bracket
    return total


def q_binomial(n, k, q):
    """Gaussian binomial coefficient.

    Returns [n]_q! / ([n-k]_q! [k]_q!) when n >= k >= 0 and 0 otherwise,
    so sums over out-of-range indices vanish without special casing.
    """
    if not (isinstance(n, int) and isinstance(k, int)):
        raise DomainError(f"binomial indices must be integers, got {n!r}, {k!r}")
    if not n >= k >= 0:
        return 0
    q = qval(q)
    # build [n]_q!/[n-k]_q! and [k]_q! together; all brackets are nonzero
    # on -1 < q <= 1
    k = min(k, n - k)
    num = 1 + 0 * q
    den = 1 + 0 * q
    for i in range(1, k + 1):
        num = num * q_bracket(n - k + i, q)
        den = den * q_bracket(i, q)
    return num / den


def q_pochhammer(a, q, n):
    """Finite q-Pochhammer symbol (a; q)_n = prod_{i<n} (1 - a q**i)."""
    _check_order(n)
    q = qval(q)
    total = 1 + 0 * a
    factor = a
    for _ in range(n):
        total = total * (1 - factor)
        factor = factor * q
    return total


def q_pochhammer_inf(a, q, policy: TruncationPolicy = DEFAULT_POLICY):
    """Infinite q-Pochhammer symbol (a; q)_inf, truncated.

    Factors are multiplied until |a| |q|**k < rel_tol * (1 - |q|); the log of
    the neglected tail is then bounded by rel_tol, so the result is accurate
    to about rel_tol relatively.  The term count is a deterministic function
    of the inputs.

    Floating point only.  q = 1 is rejected (the product has no meaning
    there) and so is |q| > 0.99, where the term count explodes.
    """
    q = qval(q)
    if q == 1:
        raise DomainError("(a; q)_inf is undefined at q = 1")
    if abs(q) > 0.99:
        raise DomainError(
            f"(a; q)_inf restricted to |q| <= 0.99; term count explodes beyond (got q={q!r})"
        )
    threshold = policy.rel_tol * (1 - abs(q))
    total = 1 + 0 * a
    factor = a
    count = 0
    while abs(factor) >= threshold:
        if count >= policy.max_terms:
            raise TruncationError(
                f"(a; q)_inf needed more than {policy.max_terms} factors at a={a!r}, q={q!r}"
            )
        total = total * (1 - factor)
        factor = factor * q
        count += 1
    return total


def multi_pochhammer(values, q, n, policy: TruncationPolicy = DEFAULT_POLICY):
    """Product of (a; q)_n over every a in values; n may be math.inf."""
    values = tuple(values)
    if not values:
        raise DomainError("multi_pochhammer needs at least one argument")
    if n == math.inf:
        total = 1
        for a in values:
            total = total * q_pochhammer_inf(a, q, policy)
        return total
    _check_order(n)
    total = 1
    for a in values:
        total = total * q_pochhammer(a, q, n)
    return total


def s_n(n, q):
    """Row sum of the Gaussian binomials, s_n(q) = sum_k [n choose k]_q.

    Grows like 2**n at q = 1 and bounds the sup of the n-th q-Hermite
    polynomial on its orthogonality interval after rescaling.
    """
    _check_order(n)
    total = 0
    for k in range(n + 1):
        total = total + q_binomial(n, k, q)
    return total
