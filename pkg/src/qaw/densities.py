"""Orthogonality densities for the q-Hermite ladder of processes.

Three densities live here, each supported on the interval
S(q) = [-2/sqrt(1-q), 2/sqrt(1-q)] (the whole real line when q = 1):

* ``f_N``       the stationary law; orthogonalizes the probabilistic
                q-Hermite family, interpolating between the semicircle
                law at q = 0 and the standard Gaussian at q = 1.
* ``f_CN``      the one-step conditional law given a value y of a
                neighboring coordinate with correlation rho; it
                orthogonalizes the Al-Salam-Chihara family and reduces to
                N(rho y, 1 - rho**2) at q = 1.
* ``phi_cond``  the law of a middle coordinate given both neighbors,
                which orthogonalizes the Askey-Wilson family of
                ``awpoly``.

Every density is an infinite product over powers of q.  Products are cut
after K factors where K is chosen so the dropped tail perturbs the value
by less than the policy's relative tolerance: each factor is
1 + O(C q**k), so K solves C |q|**K / (1 - |q|) <= rel_tol with a
conservative per-density constant C.  Evaluations report the K they used.

Scalar entry points return a ``DensityEval``; the ``*_values`` companions
evaluate on numpy arrays and return bare arrays (used heavily by the
quadrature suite).  Points on or outside the support boundary get density
exactly 0.  Conditioning points must be strictly interior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qcore import (
    DEFAULT_POLICY,
    DomainError,
    QParam,
    TruncationError,
    TruncationPolicy,
    q_pochhammer_inf,
    qval,
)
from .awpoly import CondDensityParams

__all__ = [
    "SupportInterval",
    "DensityEval",
    "w_factor",
    "f_N",
    "f_N_values",
    "f_CN",
    "f_CN_values",
    "cond_ratio_values",
    "phi_cond",
    "phi_cond_values",
    "phi_cond_via_ratio",
    "f_N_q0",
    "f_CN_q0",
    "phi_q0",
    "fcn_ratio_bounds",
]

_TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class SupportInterval:
    lo: float
    hi: float

    @classmethod
    def for_q(cls, q):
        """Orthogonality interval for base q: +-2/sqrt(1-q), all of R at q = 1."""
        q = qval(q)
        QParam(q)
        if q == 1:
            return cls(-math.inf, math.inf)
        half = 2 / math.sqrt(1 - q)
        return cls(-half, half)

    @property
    def half_width(self):
        return self.hi

    def contains(self, x):
        return self.lo <= x <= self.hi

    def strictly_contains(self, x):
        return self.lo < x < self.hi


@dataclass(frozen=True)
class DensityEval:
    """A density value together with the product length that produced it."""

    value: float
    terms: int


def w_factor(x, y, rho, q, k=0):
    """The k-th quadratic product factor coupling x and y at correlation rho.

    Equals the k = 0 factor with rho replaced by rho * q**k:

        (1 - r**2)**2 - (1-q) r (1 + r**2) x y + (1-q) r**2 (x**2 + y**2)

    with r = rho * q**k.  Positive whenever |rho| < 1 and both points lie in
    the closed support interval; exact over Fraction inputs.
    """
    r = rho * q**k
    rsq = r * r
    return (1 - rsq) ** 2 - (1 - q) * r * (1 + rsq) * x * y + (1 - q) * rsq * (x * x + y * y)


def _product_length(q, policy, scale):
    """Smallest K with scale * |q|**K / (1 - |q|) below the relative tolerance."""
    aq = abs(q)
    if aq == 0:
        return 1
    target = policy.rel_tol * (1 - aq) / scale
    if target >= 1:
        return 1
    needed = max(1, math.ceil(math.log(target) / math.log(aq)))
    if needed > policy.max_terms:
        raise TruncationError(
            f"density product needs {needed} factors, above the cap {policy.max_terms}"
        )
    return needed


@lru_cache(maxsize=128)
def _fn_setup(q, policy):
    coef = math.sqrt(1 - q) * q_pochhammer_inf(q, q, policy) / _TWO_PI
    return coef, _product_length(q, policy, 8.0)


@lru_cache(maxsize=128)
def _fcn_length(q, policy):
    return _product_length(q, policy, 32.0)


@lru_cache(maxsize=128)
def _phi_length(q, policy):
    return _product_length(q, policy, 96.0)


def _kcol(K, ndim):
    # power column broadcastable against an ndim-dimensional x array
    return np.arange(K).reshape((K,) + (1,) * ndim)


def _w_block(x, y, rho, q, kcol):
    r = rho * np.power(float(q), kcol)
    rsq = r * r
    return (1 - rsq) ** 2 - (1 - q) * r * (1 + rsq) * x * y + (1 - q) * rsq * (x * x + y * y)


def _check_base(q):
    q = qval(q)
    QParam(q)
    return q


def _check_interior(name, value, q):
    if q == 1:
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
        return
    if not SupportInterval.for_q(q).strictly_contains(value):
        raise DomainError(
            f"{name}={value!r} must lie strictly inside the support interval for q={q!r}"
        )


def _check_rho(name, value):
    if not -1 < value < 1:
        raise DomainError(f"{name} must satisfy |rho| < 1, got {value!r}")


def _f_N_masked(xa, q, policy):
    """(values, inside_mask, K) for a float array xa, with 0 outside the support."""
    coef, K = _fn_setup(q, policy)
    half = 2 / math.sqrt(1 - q)
    inside = (xa > -half) & (xa < half)
    out = np.zeros_like(xa)
    if np.any(inside):
        xs = xa[inside]
        kcol = _kcol(K, xs.ndim)
        qk = np.power(float(q), kcol)
        factors = (1 + qk) ** 2 - (1 - q) * xs * xs * qk
        prod = np.prod(factors, axis=0)
        out[inside] = coef * prod / np.sqrt(4 - (1 - q) * xs * xs)
    return out, inside, K


def f_N_values(x, q, policy: TruncationPolicy = DEFAULT_POLICY):
    """Stationary density on a numpy array of points."""
    q = _check_base(q)
    xa = np.asarray(x, dtype=float)
    if q == 1:
        return np.exp(-0.5 * xa * xa) / math.sqrt(_TWO_PI)
    vals, _, _ = _f_N_masked(xa, q, policy)
    return vals


def f_N(x, q, policy: TruncationPolicy = DEFAULT_POLICY) -> DensityEval:
    """Stationary density at a single point."""
    q = _check_base(q)
    if q == 1:
        return DensityEval(math.exp(-0.5 * x * x) / math.sqrt(_TWO_PI), 0)
    xa = np.asarray(float(x))
    vals, inside, K = _f_N_masked(xa, q, policy)
    return DensityEval(float(vals), K if bool(inside) else 0)


def f_CN_values(x, y, rho, q, policy: TruncationPolicy = DEFAULT_POLICY):
    """Conditional density given a neighbor value y, on a numpy array of points."""
    q = _check_base(q)
    _check_rho("rho", rho)
    _check_interior("y", y, q)
    xa = np.asarray(x, dtype=float)
    if q == 1:
        var = 1 - rho * rho
        return np.exp(-0.5 * (xa - rho * y) ** 2 / var) / math.sqrt(_TWO_PI * var)
    base, inside, _ = _f_N_masked(xa, q, policy)
    if rho == 0 or not np.any(inside):
        return base
    out = np.zeros_like(xa)
    out[inside] = base[inside] * cond_ratio_values(xa[inside], y, rho, q, policy)
    return out


def cond_ratio_values(x, y, rho, q, policy: TruncationPolicy = DEFAULT_POLICY):
    """Vectorized ratio f_CN(x | y, rho, q) / f_N(x), symmetric in x and y.

    Requires q < 1 and a strictly interior conditioning point y; under those
    conditions every product factor is positive for all real x, so the ratio
    is well defined even where the densities themselves vanish.
    """
    q = _check_base(q)
    if q == 1:
        raise DomainError("the product-form ratio is defined for q < 1 only")
    _check_rho("rho", rho)
    _check_interior("y", y, q)
    xa = np.asarray(x, dtype=float)
    if rho == 0:
        return np.ones_like(xa)
    K = _fcn_length(q, policy)
    kcol = _kcol(K, xa.ndim)
    qk = np.power(float(q), kcol)
    return np.prod((1 - rho * rho * qk) / _w_block(xa, y, rho, q, kcol), axis=0)


def f_CN(x, y, rho, q, policy: TruncationPolicy = DEFAULT_POLICY) -> DensityEval:
    """Conditional density at a single point given neighbor value y."""
    q = _check_base(q)
    if q == 1 or rho == 0:
        value = float(f_CN_values(np.asarray(float(x)), y, rho, q, policy))
        return DensityEval(value, 0 if q == 1 else f_N(x, q, policy).terms)
    value = float(f_CN_values(np.asarray(float(x)), y, rho, q, policy))
    inside = SupportInterval.for_q(q).strictly_contains(x)
    return DensityEval(value, _fcn_length(q, policy) if inside else 0)


def phi_cond_values(x, p: CondDensityParams, policy: TruncationPolicy = DEFAULT_POLICY):
    """Two-sided conditional density on a numpy array of points.

    The law of a coordinate given neighbor values y (correlation rho1) and
    z (correlation rho2).  This is the orthogonality density of the
    Askey-Wilson family built by ``map_params`` from the same bundle.
    """
    q = p.q
    _check_interior("y", p.y, q)
    _check_interior("z", p.z, q)
    xa = np.asarray(x, dtype=float)
    if q == 1:
        mu, var = _phi_gaussian_moments(p)
        return np.exp(-0.5 * (xa - mu) ** 2 / var) / math.sqrt(_TWO_PI * var)
    base, inside, _ = _f_N_masked(xa, q, policy)
    if (p.rho1 == 0 and p.rho2 == 0) or not np.any(inside):
        return base
    K = _phi_length(q, policy)
    xs = xa[inside]
    kcol = _kcol(K, xs.ndim)
    qk = np.power(float(q), kcol)
    r1sq = p.rho1 * p.rho1
    r2sq = p.rho2 * p.rho2
    num = (1 - r1sq * qk) * (1 - r2sq * qk) * _w_block(p.y, p.z, p.rho1 * p.rho2, q, kcol)
    den = (
        (1 - r1sq * r2sq * qk)
        * _w_block(xs, p.y, p.rho1, q, kcol)
        * _w_block(xs, p.z, p.rho2, q, kcol)
    )
    out = np.zeros_like(xa)
    out[inside] = base[inside] * np.prod(num / den, axis=0)
    return out


def phi_cond(x, p: CondDensityParams, policy: TruncationPolicy = DEFAULT_POLICY) -> DensityEval:
    """Two-sided conditional density at a single point."""
    value = float(phi_cond_values(np.asarray(float(x)), p, policy))
    if p.q == 1:
        return DensityEval(value, 0)
    if not SupportInterval.for_q(p.q).strictly_contains(x):
        return DensityEval(value, 0)
    if p.rho1 == 0 and p.rho2 == 0:
        return DensityEval(value, _fn_setup(p.q, policy)[1])
    return DensityEval(value, _phi_length(p.q, policy))


def _phi_gaussian_moments(p: CondDensityParams):
    r1sq = p.rho1 * p.rho1
    r2sq = p.rho2 * p.rho2
    den = 1 - r1sq * r2sq
    mu = (p.y * p.rho1 * (1 - r2sq) + p.z * p.rho2 * (1 - r1sq)) / den
    var = (1 - r1sq) * (1 - r2sq) / den
    return mu, var


def phi_cond_via_ratio(x, p: CondDensityParams, policy: TruncationPolicy = DEFAULT_POLICY):
    """phi_cond through its Markov factorization, as an independent cross-check.

    phi(x | y, z) = f_CN(x | y, rho1) f_CN(z | x, rho2) / f_CN(z | y, rho1 rho2).
    The middle point x becomes a conditioning value in the second factor, so
    points on or outside the support boundary return 0 directly.
    """
    q = p.q
    _check_interior("y", p.y, q)
    _check_interior("z", p.z, q)
    if q != 1 and not SupportInterval.for_q(q).strictly_contains(x):
        return 0.0
    num1 = f_CN(x, p.y, p.rho1, q, policy).value
    num2 = f_CN(p.z, x, p.rho2, q, policy).value
    den = f_CN(p.z, p.y, p.rho1 * p.rho2, q, policy).value
    return num1 * num2 / den


def f_N_q0(x):
    """Semicircle closed form of f_N at q = 0."""
    if not -2 < x < 2:
        return 0.0
    return math.sqrt(4 - x * x) / _TWO_PI


def f_CN_q0(x, y, rho):
    """Closed form of f_CN at q = 0: one quadratic factor against the semicircle."""
    _check_rho("rho", rho)
    _check_interior("y", y, 0)
    if not -2 < x < 2:
        return 0.0
    return f_N_q0(x) * (1 - rho * rho) / w_factor(x, y, rho, 0)


def phi_q0(x, p: CondDensityParams):
    """Closed form of phi_cond at q = 0."""
    if p.q != 0:
        raise DomainError("phi_q0 is the q = 0 closed form; build the bundle with q = 0")
    _check_interior("y", p.y, 0)
    _check_interior("z", p.z, 0)
    if not -2 < x < 2:
        return 0.0
    r1sq = p.rho1 * p.rho1
    r2sq = p.rho2 * p.rho2
    pref = (1 - r1sq) * (1 - r2sq) / (1 - r1sq * r2sq)
    return (
        f_N_q0(x)
        * pref
        * w_factor(p.y, p.z, p.rho1 * p.rho2, 0)
        / (w_factor(x, p.y, p.rho1, 0) * w_factor(x, p.z, p.rho2, 0))
    )


def fcn_ratio_bounds(y, rho, q, policy: TruncationPolicy = DEFAULT_POLICY):
    """Uniform-in-x bounds (lower, upper) for the ratio f_CN(x|y,rho,q) / f_N(x).

    The upper bound (rho**2; q)_inf / (|rho|; q)_inf**4 comes from the
    pointwise factor bound w_k >= (1 - |rho| q**k)**4 on the closed support.
    The lower bound maximizes each w_k over the support interval instead;
    each factor is convex in x, so the maximum sits at an endpoint, where
    w_k collapses to the perfect square

        ((1 + rho**2 q**(2k)) + sqrt(1-q) |rho q**k y|)**2.

    Both bounds hold for every x strictly inside the support, up to the
    truncation tolerance of the policy.
    """
    q = _check_base(q)
    if q == 1:
        raise DomainError("the ratio bounds are defined for q < 1 only")
    _check_rho("rho", rho)
    _check_interior("y", y, q)
    if rho == 0:
        return 1.0, 1.0
    num = q_pochhammer_inf(rho * rho, q, policy)
    upper = num / q_pochhammer_inf(abs(rho), q, policy) ** 4
    K = _product_length(q, policy, 16.0)
    k = np.arange(K)
    rk = rho * np.power(float(q), k)
    den = ((1 + rk * rk) + math.sqrt(1 - q) * np.abs(rk) * abs(y)) ** 2
    lower = num / float(np.prod(den))
    return float(lower), float(upper)
