"""Quadrature on the q-Hermite support and the executable check suite.

``integrate_on_S`` integrates over the orthogonality interval S(q) after
the substitution x = (2/sqrt(1-q)) cos(theta).  The square-root factor in
the stationary density cancels against the Jacobian, so every integrand
this package produces becomes smooth in theta and a composite adaptive
Gauss-Legendre rule converges fast.  Integrands may be vector valued
(return shape (k, npoints) for simultaneous integration of k components);
the error control then applies to the worst component.

The ``check_*`` functions each verify one identity by quadrature or by
series/grid comparison and return ``CheckReport`` rows.  ``run_suite``
executes a configured selection over deterministic parameter grids and
returns an ordered report; serialize it with ``report_to_json`` or
``report_to_text``.  Identical configurations produce byte-identical
serialized reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .qcore import (
    DomainError,
    QParam,
    TruncationError,
    q_bracket,
    q_binomial,
    q_factorial,
    q_pochhammer,
    q_pochhammer_inf,
    qval,
    s_n,
)
from .polyfam import asc_P_seq, hermite_H_seq
from .awpoly import CondDensityParams, aw_A_sym_seq, aw_prefactor
from .densities import (
    SupportInterval,
    cond_ratio_values,
    f_CN,
    f_CN_values,
    f_N,
    f_N_values,
    fcn_ratio_bounds,
    phi_cond_values,
)
from .moments import c_n_main

__all__ = [
    "QuadratureEstimate",
    "CheckReport",
    "integrate_on_S",
    "check_normalization",
    "check_orthogonality_H",
    "check_cond_expectation",
    "check_orthogonality_P",
    "check_chapman_kolmogorov",
    "check_sn_series",
    "check_aw_orthogonality",
    "check_moments",
    "check_vnm",
    "check_ratio_bounds",
    "check_poisson_mehler",
    "check_density_expansion",
    "SuiteConfig",
    "CHECK_NAMES",
    "DEFAULT_TOLERANCES",
    "run_suite",
    "report_to_json",
    "report_to_text",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_GAUSSIAN_CUTOFF = 12.0


@dataclass(frozen=True)
class QuadratureEstimate:
    value: object
    abs_error_estimate: float
    evaluations: int


@dataclass
class CheckReport:
    name: str
    params: dict
    residual: float
    tolerance: float
    passed: bool


def _report(name, params, residual, tolerance):
    residual = float(residual)
    return CheckReport(name, params, residual, float(tolerance), residual <= tolerance)


def integrate_on_S(f, q, target_tol=1e-10, max_panels=16384):
    """Adaptive Gauss-Legendre integral of f over the support interval.

    For q < 1 the substitution x = (2/sqrt(1-q)) cos(theta) maps S(q) to
    theta in [0, pi]; inverse-square-root edge behavior of the densities
    cancels against the Jacobian.  At q = 1 the Gaussian tails are cut at
    |x| = 12, far below any tolerance this package uses.

    Panels are bisected until the two-level estimate on each piece is below
    its length-proportional share of target_tol (with a roundoff floor).
    Raises TruncationError after max_panels bisections.
    """
    q = qval(q)
    QParam(q)
    if q == 1:
        lo, hi = -_GAUSSIAN_CUTOFF, _GAUSSIAN_CUTOFF

        def g(t):
            return np.asarray(f(t), dtype=float)

    else:
        half = 2 / math.sqrt(1 - q)
        lo, hi = 0.0, math.pi

        def g(t):
            return np.asarray(f(half * np.cos(t)), dtype=float) * (half * np.sin(t))

    evals = 0

    def panel(a, b):
        nonlocal evals
        evals += _GL_NODES.size
        ts = 0.5 * (b - a) * _GL_NODES + 0.5 * (a + b)
        return np.dot(g(ts), _GL_WEIGHTS) * (0.5 * (b - a))

    whole = panel(lo, hi)
    scale = 1.0 + float(np.max(np.abs(whole)))
    total = np.zeros_like(whole)
    err_total = 0.0
    stack = [(lo, hi, whole)]
    splits = 0
    while stack:
        a, b, coarse = stack.pop()
        splits += 1
        if splits > max_panels:
            raise TruncationError(
                f"quadrature did not converge within {max_panels} panel bisections"
            )
        mid = 0.5 * (a + b)
        left = panel(a, mid)
        right = panel(mid, b)
        delta = float(np.max(np.abs(coarse - left - right)))
        local_tol = target_tol * (b - a) / (hi - lo)
        if delta <= max(local_tol, 4e-16 * scale):
            total = total + left + right
            err_total += delta
        else:
            stack.append((a, mid, left))
            stack.append((mid, b, right))
    value = float(total) if total.ndim == 0 else total
    return QuadratureEstimate(value, err_total, evals)


def _bundle_dict(p: CondDensityParams):
    return {"y": p.y, "rho1": p.rho1, "z": p.z, "rho2": p.rho2, "q": p.q}


# --- individual checks --------------------------------------------------------


def check_normalization(p: CondDensityParams, tol, quad_tol=None):
    """All three densities integrate to 1 over the support."""
    quad_tol = tol / 20 if quad_tol is None else quad_tol
    q = p.q

    def integrand(x):
        return np.stack(
            [
                f_N_values(x, q),
                f_CN_values(x, p.y, p.rho1, q),
                phi_cond_values(x, p),
            ]
        )

    est = integrate_on_S(integrand, q, quad_tol)
    out = [
        _report("normalization", {"density": "f_N", "q": q}, abs(est.value[0] - 1), tol),
        _report(
            "normalization",
            {"density": "f_CN", "y": p.y, "rho": p.rho1, "q": q},
            abs(est.value[1] - 1),
            tol,
        ),
        _report(
            "normalization",
            {"density": "phi", **_bundle_dict(p)},
            abs(est.value[2] - 1),
            tol,
        ),
    ]
    return out


def _pair_indices(nmax):
    return [(n, m) for n in range(nmax + 1) for m in range(n, nmax + 1)]


def check_orthogonality_H(nmax, q, tol, quad_tol=None):
    """Pairwise q-Hermite integrals against f_N: diagonal [n]_q!, zero off it."""
    quad_tol = tol / 20 if quad_tol is None else quad_tol
    pairs = _pair_indices(nmax)

    def integrand(x):
        H = hermite_H_seq(nmax, x, q)
        fn = f_N_values(x, q)
        return np.stack([H[n] * H[m] * fn for n, m in pairs])

    est = integrate_on_S(integrand, q, quad_tol)
    out = []
    for idx, (n, m) in enumerate(pairs):
        target = q_factorial(n, q) if n == m else 0.0
        out.append(
            _report(
                "orthogonality_H",
                {"n": n, "m": m, "q": q},
                abs(est.value[idx] - target),
                tol,
            )
        )
    return out


def check_cond_expectation(nmax, y, rho, q, tol, quad_tol=None):
    """Integrals of H_n against f_CN equal rho**n H_n at the conditioning point."""
    quad_tol = tol / 20 if quad_tol is None else quad_tol

    def integrand(x):
        H = hermite_H_seq(nmax, x, q)
        fcn = f_CN_values(x, y, rho, q)
        return np.stack([H[n] * fcn for n in range(nmax + 1)])

    est = integrate_on_S(integrand, q, quad_tol)
    Hy = hermite_H_seq(nmax, y, q)
    out = []
    for n in range(nmax + 1):
        out.append(
            _report(
                "cond_expectation",
                {"n": n, "y": y, "rho": rho, "q": q},
                abs(est.value[n] - rho**n * Hy[n]),
                tol,
            )
        )
    return out


def check_orthogonality_P(nmax, y, rho, q, tol, quad_tol=None):
    """Al-Salam-Chihara orthogonality against f_CN: diagonal (rho^2; q)_n [n]_q!."""
    quad_tol = tol / 20 if quad_tol is None else quad_tol
    pairs = _pair_indices(nmax)

    def integrand(x):
        P = asc_P_seq(nmax, x, y, rho, q)
        fcn = f_CN_values(x, y, rho, q)
        return np.stack([P[n] * P[m] * fcn for n, m in pairs])

    est = integrate_on_S(integrand, q, quad_tol)
    out = []
    for idx, (n, m) in enumerate(pairs):
        target = q_pochhammer(rho * rho, q, n) * q_factorial(n, q) if n == m else 0.0
        out.append(
            _report(
                "orthogonality_P",
                {"n": n, "m": m, "y": y, "rho": rho, "q": q},
                abs(est.value[idx] - target),
                tol,
            )
        )
    return out


def check_chapman_kolmogorov(x, z, rho1, rho2, q, tol, quad_tol=None):
    """One-step transition densities compose: correlations multiply."""
    quad_tol = tol / 20 if quad_tol is None else quad_tol
    fnx = f_N(x, q).value

    def integrand(ys):
        # f_CN(x | y) = f_N(x) * ratio(y, x) by symmetry of the product ratio
        return fnx * cond_ratio_values(ys, x, rho1, q) * f_CN_values(ys, z, rho2, q)

    est = integrate_on_S(integrand, q, quad_tol)
    target = f_CN(x, z, rho1 * rho2, q).value
    return _report(
        "chapman_kolmogorov",
        {"x": x, "z": z, "rho1": rho1, "rho2": rho2, "q": q},
        abs(est.value - target),
        tol,
    )


def check_sn_series(t, q, tol, max_terms=500):
    """Generating-function identities for the binomial sums s_n.

        sum_i s_i(q) t**i / (q; q)_i   = 1 / (t; q)_inf**2
        sum_i s_i(q)^2 t**i / (q; q)_i = (t**2; q)_inf / (t; q)_inf**4
    """
    if not -1 < t < 1:
        raise DomainError(f"the series identities need |t| < 1, got {t!r}")
    q = qval(q)
    if not -1 < q < 1:
        raise DomainError(f"the series identities need |q| < 1, got {q!r}")
    S1 = 0.0
    S2 = 0.0
    poch = 1.0
    ti = 1.0
    for i in range(max_terms):
        if i > 0:
            poch *= 1 - q**i
            ti *= t
        si = float(s_n(i, q))
        term1 = si * ti / poch
        term2 = si * si * ti / poch
        S1 += term1
        S2 += term2
        if i >= 4 and abs(term1) < 1e-17 * (1 + abs(S1)) and abs(term2) < 1e-17 * (1 + abs(S2)):
            break
    pt = q_pochhammer_inf(t, q)
    rhs1 = 1 / pt**2
    rhs2 = q_pochhammer_inf(t * t, q) / pt**4
    residual = max(abs(S1 - rhs1), abs(S2 - rhs2))
    return _report("sn_series", {"t": t, "q": q}, residual, tol)


def check_aw_orthogonality(nmax, p: CondDensityParams, tol, quad_tol=None):
    """Askey-Wilson orthogonality against the two-sided conditional density."""
    quad_tol = tol / 20 if quad_tol is None else quad_tol
    pairs = [(n, m) for n in range(nmax + 1) for m in range(n + 1, nmax + 1)]

    def integrand(x):
        A = aw_A_sym_seq(nmax, x, p)
        phi = phi_cond_values(x, p)
        return np.stack([A[n] * A[m] * phi for n, m in pairs])

    est = integrate_on_S(integrand, p.q, quad_tol)
    out = []
    for idx, (n, m) in enumerate(pairs):
        out.append(
            _report(
                "aw_orthogonality",
                {"n": n, "m": m, **_bundle_dict(p)},
                abs(est.value[idx]),
                tol,
            )
        )
    return out


def check_moments(nmax, p: CondDensityParams, tol, quad_tol=None):
    """Quadrature moments of phi_cond against the closed-form c_n."""
    quad_tol = tol / 20 if quad_tol is None else quad_tol

    def integrand(x):
        H = hermite_H_seq(nmax, x, p.q)
        phi = phi_cond_values(x, p)
        return np.stack([H[n] * phi for n in range(nmax + 1)])

    est = integrate_on_S(integrand, p.q, quad_tol)
    out = []
    for n in range(nmax + 1):
        target = c_n_main(n, p)
        out.append(
            _report(
                "moments",
                {"n": n, **_bundle_dict(p)},
                abs(est.value[n] - target),
                tol,
            )
        )
    return out


def check_vnm(n, m, x, z, rho1, rho2, q, tol, quad_tol=None):
    """Projection of the Askey-Wilson polynomial on an Al-Salam-Chihara level.

    Integrating A_n(x | y, rho1, z, rho2, q) P_m(y | x, rho1, q) against
    f_CN(y | x, rho1, q) over the first conditioning point y gives

        pref(n) (-1)**m q**C(m,2) rho1**m [n]_q!/[n-m]_q!
        P_{n-m}(x | z, rho2, q) / (rho2^2; q)_{n-m}

    for m <= n and 0 for m > n.
    """
    quad_tol = tol / 20 if quad_tol is None else quad_tol
    q = qval(q)
    top = max(n, m)
    r1sq = rho1 * rho1
    r2sq = rho2 * rho2
    pref = aw_prefactor(n, rho1, rho2, q)
    Pxz = asc_P_seq(n, x, z, rho2, q)
    poch1 = [q_pochhammer(r1sq, q, j) for j in range(n + 1)]
    poch2 = [q_pochhammer(r2sq, q, j) for j in range(n + 1)]
    coeff = [
        (-1) ** j
        * q ** math.comb(j, 2)
        * q_binomial(n, j, q)
        * rho1**j
        * Pxz[n - j]
        / (poch2[n - j] * poch1[j])
        for j in range(n + 1)
    ]

    def integrand(ys):
        Pyx = asc_P_seq(top, ys, x, rho1, q)
        A = pref * sum(c * Pyx[j] for j, c in enumerate(coeff))
        return A * Pyx[m] * f_CN_values(ys, x, rho1, q)

    est = integrate_on_S(integrand, q, quad_tol)
    if m > n:
        target = 0.0
    else:
        target = (
            pref
            * (-1) ** m
            * q ** math.comb(m, 2)
            * rho1**m
            * q_factorial(n, q)
            / q_factorial(n - m, q)
            * Pxz[n - m]
            / poch2[n - m]
        )
    return _report(
        "vnm",
        {"n": n, "m": m, "x": x, "z": z, "rho1": rho1, "rho2": rho2, "q": q},
        abs(est.value - target),
        tol,
    )


def check_ratio_bounds(y, rho, q, tol, npoints=101):
    """The f_CN / f_N ratio stays inside its closed-form bounds on a grid."""
    lower, upper = fcn_ratio_bounds(y, rho, q)
    half = SupportInterval.for_q(q).half_width
    xs = np.linspace(-half, half, npoints + 2)[1:-1]
    ratio = cond_ratio_values(xs, y, rho, q)
    violation = max(
        0.0,
        float(np.max(lower - ratio)),
        float(np.max(ratio - upper)),
    )
    return _report(
        "ratio_bounds",
        {"y": y, "rho": rho, "q": q, "points": npoints},
        violation,
        tol,
    )


def check_poisson_mehler(y, rho, q, tol, terms=60, npoints=21):
    """Partial sums of the Poisson-Mehler kernel converge to f_CN / f_N."""
    half = SupportInterval.for_q(q).half_width
    xs = np.linspace(-0.9 * half, 0.9 * half, npoints)
    H = hermite_H_seq(terms - 1, xs, q)
    Hy = hermite_H_seq(terms - 1, y, q)
    kernel = np.zeros_like(xs)
    weight = 1.0
    for i in range(terms):
        if i > 0:
            weight = weight * rho / q_bracket(i, q)
        kernel = kernel + weight * H[i] * Hy[i]
    partial = f_N_values(xs, q) * kernel
    target = f_CN_values(xs, y, rho, q)
    residual = float(np.max(np.abs(partial - target)))
    return _report(
        "poisson_mehler",
        {"y": y, "rho": rho, "q": q, "terms": terms},
        residual,
        tol,
    )


def check_density_expansion(p: CondDensityParams, tol, terms=40, npoints=21):
    """Partial sums of the q-Hermite moment expansion converge to phi_cond."""
    q = p.q
    half = SupportInterval.for_q(q).half_width
    xs = np.linspace(-0.9 * half, 0.9 * half, npoints)
    H = hermite_H_seq(terms - 1, xs, q)
    series = np.zeros_like(xs)
    fact = 1.0
    for i in range(terms):
        if i > 0:
            fact = fact * q_bracket(i, q)
        series = series + H[i] * c_n_main(i, p) / fact
    partial = f_N_values(xs, q) * series
    target = phi_cond_values(xs, p)
    residual = float(np.max(np.abs(partial - target)))
    return _report(
        "density_expansion",
        {**_bundle_dict(p), "terms": terms},
        residual,
        tol,
    )


# --- suite --------------------------------------------------------------------

CHECK_NAMES = (
    "normalization",
    "orthogonality_H",
    "cond_expectation",
    "orthogonality_P",
    "chapman_kolmogorov",
    "sn_series",
    "aw_orthogonality",
    "moments",
    "vnm",
    "ratio_bounds",
    "poisson_mehler",
    "density_expansion",
)

DEFAULT_TOLERANCES = {
    "normalization": 1e-8,
    "orthogonality_H": 1e-8,
    "cond_expectation": 1e-8,
    "orthogonality_P": 1e-8,
    "chapman_kolmogorov": 1e-7,
    "sn_series": 1e-10,
    "aw_orthogonality": 1e-7,
    "moments": 1e-7,
    "vnm": 1e-6,
    "ratio_bounds": 1e-12,
    "poisson_mehler": 1e-8,
    "density_expansion": 1e-6,
}


@dataclass
class SuiteConfig:
    """Parameter grids and tolerances for run_suite.

    The default grids keep |q| <= 0.7 and |rho| <= 0.6, where product
    truncation lengths stay short and the whole suite runs in desk time.
    The series-convergence checks restrict q further to |q| <= 0.5, where
    their a priori term bounds guarantee the documented accuracy within the
    default term budgets.
    """

    checks: tuple = CHECK_NAMES
    q_grid: tuple = (-0.5, 0.0, 0.3, 0.7)
    rho_grid: tuple = (0.0, 0.3, 0.6)
    nmax_orthogonality: int = 8
    nmax_aw: int = 6
    nmax_moments: int = 8
    pm_terms: int = 60
    expansion_terms: int = 40
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def yz_pairs(self, q):
        scaled = 1.2 / math.sqrt(1 - q) if q != 1 else 1.2
        return ((0.0, 0.0), (0.5, -0.5), (scaled, -scaled))

    def cond_points(self, q):
        # strictly interior conditioning values, one fixed and one q-scaled
        scaled = 1.2 / math.sqrt(1 - q) if q != 1 else 1.2
        return (0.5, scaled)

    def bundles(self, q):
        out = []
        for rho1, rho2 in ((0.3, 0.6), (0.6, 0.6)):
            for y, z in self.yz_pairs(q):
                out.append(CondDensityParams(y, rho1, z, rho2, q))
        return out


def _suite_normalization(config, tol):
    out = []
    for q in config.q_grid:
        out.extend(check_normalization(CondDensityParams(0.5, 0.3, -0.5, 0.6, q), tol))
    return out


def _suite_orthogonality_H(config, tol):
    out = []
    for q in config.q_grid:
        out.extend(check_orthogonality_H(config.nmax_orthogonality, q, tol))
    return out


def _suite_cond_expectation(config, tol):
    out = []
    for q in config.q_grid:
        for rho in config.rho_grid:
            for y in config.cond_points(q):
                out.extend(
                    check_cond_expectation(config.nmax_orthogonality, y, rho, q, tol)
                )
    return out


def _suite_orthogonality_P(config, tol):
    out = []
    for q in config.q_grid:
        for rho in config.rho_grid:
            if rho == 0:
                continue  # collapses to orthogonality_H, checked separately
            for y in config.cond_points(q):
                out.extend(
                    check_orthogonality_P(config.nmax_orthogonality, y, rho, q, tol)
                )
    return out


def _suite_chapman_kolmogorov(config, tol):
    out = []
    for q in config.q_grid:
        out.append(check_chapman_kolmogorov(0.3, -0.5, 0.5, 0.6, q, tol))
        out.append(check_chapman_kolmogorov(0.3, -0.5, 0.3, 0.0, q, tol))
    for q in (0.0, 0.3):
        out.append(check_chapman_kolmogorov(0.8, 0.4, 0.6, 0.3, q, tol))
    return out


def _suite_sn_series(config, tol):
    out = []
    for q in config.q_grid:
        for t in (0.3, -0.4):
            out.append(check_sn_series(t, q, tol))
    return out


def _suite_aw_orthogonality(config, tol):
    out = []
    for q in config.q_grid:
        for p in config.bundles(q):
            out.extend(check_aw_orthogonality(config.nmax_aw, p, tol))
    return out


def _suite_moments(config, tol):
    out = []
    for q in config.q_grid:
        for p in config.bundles(q):
            out.extend(check_moments(config.nmax_moments, p, tol))
    return out


def _suite_vnm(config, tol):
    out = []
    for q in config.q_grid:
        for n, m in ((1, 0), (1, 1), (2, 1), (3, 2), (1, 2)):
            out.append(check_vnm(n, m, 0.3, -0.5, 0.5, 0.6, q, tol))
    return out


def _suite_ratio_bounds(config, tol):
    out = []
    for q in config.q_grid:
        for rho in config.rho_grid:
            if rho == 0:
                continue  # bounds are trivially 1 <= 1 <= 1
            for y in config.cond_points(q):
                out.append(check_ratio_bounds(y, rho, q, tol))
    return out


def _suite_poisson_mehler(config, tol):
    out = []
    for q in config.q_grid:
        if abs(q) > 0.5:
            continue
        for rho in config.rho_grid:
            if rho == 0:
                continue
            for y in config.cond_points(q):
                out.append(check_poisson_mehler(y, rho, q, tol, terms=config.pm_terms))
    return out


def _suite_density_expansion(config, tol):
    out = []
    for q in config.q_grid:
        if abs(q) > 0.5:
            continue
        for p in config.bundles(q):
            out.append(check_density_expansion(p, tol, terms=config.expansion_terms))
    return out


_SUITE_RUNNERS = {
    "normalization": _suite_normalization,
    "orthogonality_H": _suite_orthogonality_H,
    "cond_expectation": _suite_cond_expectation,
    "orthogonality_P": _suite_orthogonality_P,
    "chapman_kolmogorov": _suite_chapman_kolmogorov,
    "sn_series": _suite_sn_series,
    "aw_orthogonality": _suite_aw_orthogonality,
    "moments": _suite_moments,
    "vnm": _suite_vnm,
    "ratio_bounds": _suite_ratio_bounds,
    "poisson_mehler": _suite_poisson_mehler,
    "density_expansion": _suite_density_expansion,
}


def run_suite(config: SuiteConfig = None):
    """Run the configured checks over their deterministic grids, in order."""
    if config is None:
        config = SuiteConfig()
    reports = []
    for name in config.checks:
        if name not in _SUITE_RUNNERS:
            raise DomainError(f"unknown check name {name!r}; known: {', '.join(CHECK_NAMES)}")
        tol = config.tolerances.get(name, DEFAULT_TOLERANCES[name])
        reports.extend(_SUITE_RUNNERS[name](config, tol))
    return reports


def report_to_json(reports):
    rows = [
        {
            "name": r.name,
            "params": r.params,
            "residual": r.residual,
            "tolerance": r.tolerance,
            "pass": r.passed,
        }
        for r in reports
    ]
    return json.dumps(rows, separators=(",", ":"))


def report_to_text(reports):
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        params = " ".join(f"{k}={v!r}" for k, v in r.params.items())
        lines.append(f"{status} {r.name} [{params}] residual={r.residual!r} tol={r.tolerance!r}")
    npass = sum(1 for r in reports if r.passed)
    lines.append(f"{npass}/{len(reports)} checks passed")
    return "\n".join(lines) + "\n"
