"""Askey-Wilson polynomials for conjugate complex parameter pairs.

The parameter regime handled here takes a = conj(b) and c = conj(d) with
|a|, |c| < 1, which is the regime where all four Askey-Wilson parameters are
produced from five real numbers (two conditioning points y and z, two
correlation-like numbers rho1 and rho2, and the base q) by ``map_params``.
In that regime the polynomials have real coefficients even though the
parameters are complex.

Three independent evaluation paths are provided and cross-checked by the
test suite:

* ``aw_D``            the continuous-scaling polynomial assembled from
                      Al-Salam-Chihara and auxiliary families,
* ``aw_A_sym``        the probabilistic-scaling analogue (monic),
* ``aw_A_mixed``      a single-sum form mixing the two conditioning points.

``aw_phi43_oracle`` evaluates the classical terminating basic hypergeometric
series for the same polynomial in extended precision; it exists purely as a
test oracle.  ``aw_D_free`` and ``aw_A_free`` are the q = 0 closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    DEFAULT_POLICY,
    DomainError,
    PoleError,
    QParam,
    TruncationPolicy,
    q_binomial,
    q_pochhammer,
    qval,
)
from .polyfam import (
    asc_P_seq,
    asc_Q_seq,
    b_big_seq,
    b_small_seq,
    real_part,
)

__all__ = [
    "AWComplexParams",
    "CondDensityParams",
    "map_params",
    "aw_prefactor",
    "aw_D",
    "aw_A_sym",
    "aw_A_sym_seq",
    "aw_A_mixed",
    "aw_D_free",
    "aw_A_free",
    "aw_phi43_oracle",
]


@dataclass(frozen=True)
class AWComplexParams:
    """The four Askey-Wilson parameters in the conjugate-pair regime.

    Requires b = conj(a), d = conj(c), |a| < 1, |c| < 1; the pairwise
    products then all have modulus below one, which keeps every Pochhammer
    denominator of the representation formulas away from zero.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        if abs(b - a.conjugate()) > 1e-12 * (1 + abs(a)):
            raise DomainError("second parameter must be the conjugate of the first")
        if abs(d - c.conjugate()) > 1e-12 * (1 + abs(c)):
            raise DomainError("fourth parameter must be the conjugate of the third")
        if not (abs(a) < 1 and abs(c) < 1):
            raise DomainError("parameter moduli must be below one")
        pairs = (a * b, a * c, a * d, b * c, b * d, c * d)
        if not all(abs(p) < 1 for p in pairs):
            raise DomainError("all pairwise parameter products must have modulus below one")


@dataclass(frozen=True)
class CondDensityParams:
    """Real parameter bundle (y, rho1, z, rho2, q) for the conditional laws.

    y and z must lie in the closed orthogonality interval for the base q,
    i.e. (1-q) y**2 <= 4, and the correlations must satisfy |rho| < 1.
    Density evaluation additionally demands strict interior membership; the
    closed interval is allowed here so that boundary parameter studies can
    at least be represented.
    """

    y: float
    rho1: float
    z: float
    rho2: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, "q", qval(self.q))
        QParam(self.q)
        for name in ("rho1", "rho2"):
            r = getattr(self, name)
            if not -1 < r < 1:
                raise DomainError(f"{name} must satisfy |rho| < 1, got {r!r}")
        one_minus_q = 1 - self.q
        for name in ("y", "z"):
            t = getattr(self, name)
            if one_minus_q * t * t > 4:
                raise DomainError(
                    f"{name}={t!r} lies outside the orthogonality interval for q={self.q!r}"
                )

    def swapped(self):
        """The same bundle with the roles of (y, rho1) and (z, rho2) exchanged."""
        return CondDensityParams(self.z, self.rho2, self.y, self.rho1, self.q)


def map_params(p: CondDensityParams) -> AWComplexParams:
    """Build the conjugate-pair Askey-Wilson parameters from a real bundle.

    a = (sqrt(1-q)/2) rho1 (y - i sqrt(4/(1-q) - y**2)) and b = conj(a),
    with c, d built the same way from (z, rho2).  Then |a| = |rho1| and
    a b = rho1**2, and similarly for the second pair.  q = 1 is rejected.
    """
    q = p.q
    if q == 1:
        raise DomainError("the parameter map is defined for q < 1 only")
    scale = math.sqrt(1 - q) / 2

    def half(t, rho):
        inner = 4 / (1 - q) - t * t
        # roundoff can push a boundary point a hair negative
        root = math.sqrt(max(0.0, inner))
        return scale * rho * complex(t, -root)

    a = half(p.y, p.rho1)
    c = half(p.z, p.rho2)
    return AWComplexParams(a, a.conjugate(), c, c.conjugate())


def _guard_factor(value, what):
    if isinstance(value, complex) or isinstance(value, float):
        if abs(value) < 1e-14:
            raise PoleError(f"{what} vanished; the formula has a pole here")
    elif value == 0:
        raise PoleError(f"{what} vanished; the formula has a pole here")
    return value


def _poch_list(t, q, n):
    """[(t; q)_0, ..., (t; q)_n] built incrementally."""
    out = [1 + 0 * t]
    factor = t
    for _ in range(n):
        out.append(out[-1] * (1 - factor))
        factor = factor * q
    return out


def _shifted_poch(t, q, n):
    """(t q**(n-1); q)_n, evaluated without forming q**(n-1) when n = 0."""
    if n == 0:
        return 1
    total = 1
    power = q ** (n - 1)
    for _ in range(n):
        total = _guard_factor(1 - t * power, "a shifted Pochhammer factor") * total
        power = power * q
    return total


def aw_prefactor(n, rho1, rho2, q):
    """(rho1^2; q)_n (rho2^2; q)_n / (rho1^2 rho2^2 q**(n-1); q)_n.

    The normalizing constant shared by all probabilistic-scaling
    representations; equals 1 at n = 0.
    """
    r1sq = rho1 * rho1
    r2sq = rho2 * rho2
    return q_pochhammer(r1sq, q, n) * q_pochhammer(r2sq, q, n) / _shifted_poch(
        r1sq * r2sq, q, n
    )


def aw_D(n, x, params: AWComplexParams, q):
    """Askey-Wilson polynomial in the continuous scaling, leading coefficient 2**n.

    Assembled from the auxiliary family and two Al-Salam-Chihara families:

        D_n = pref * sum_j [n,j]_q b_{n-j}(x) *
              sum_i [j,i]_q Q_i(x|a,b) Q_{j-i}(x|c,d) / ((ab)_i (cd)_{j-i})

    with pref = (ab)_n (cd)_n / (abcd q**(n-1))_n.  For conjugate-pair
    parameters and real x the value is real and is returned as a float.
    """
    q = qval(q)
    if n == 0:
        return 1.0
    a, b, c, d = params.a, params.b, params.c, params.d
    ab = a * b
    cd = c * d
    b_vals = b_small_seq(n, x, q)
    Q1 = asc_Q_seq(n, x, a, b, q)
    Q2 = asc_Q_seq(n, x, c, d, q)
    poch_ab = _poch_list(ab, q, n)
    poch_cd = _poch_list(cd, q, n)
    for i in range(1, n + 1):
        _guard_factor(poch_ab[i], "(ab; q)_i")
        _guard_factor(poch_cd[i], "(cd; q)_i")
    pref = poch_ab[n] * poch_cd[n] / _shifted_poch(ab * cd, q, n)
    total = 0
    for j in range(n + 1):
        inner = 0
        for i in range(j + 1):
            inner = inner + q_binomial(j, i, q) * Q1[i] * Q2[j - i] / (
                poch_ab[i] * poch_cd[j - i]
            )
        total = total + q_binomial(n, j, q) * b_vals[n - j] * inner
    value = pref * total
    if isinstance(value, complex) and not isinstance(x, complex):
        return real_part(value)
    return value


def aw_A_sym_seq(nmax, x, p: CondDensityParams):
    """Values [A_0(x), ..., A_nmax(x)] of the monic probabilistic-scaling family.

    Shares the per-degree prefactor structure of aw_D but runs entirely over
    the real parameter bundle, so Fraction inputs give exact values.
    """
    q = p.q
    if q == 1:
        raise DomainError("the Askey-Wilson representations require q < 1")
    r1sq = p.rho1 * p.rho1
    r2sq = p.rho2 * p.rho2
    B = b_big_seq(nmax, x, q)
    P1 = asc_P_seq(nmax, x, p.y, p.rho1, q)
    P2 = asc_P_seq(nmax, x, p.z, p.rho2, q)
    poch1 = _poch_list(r1sq, q, nmax)
    poch2 = _poch_list(r2sq, q, nmax)
    # inner[j] = sum_i [j,i]_q P1[i] P2[j-i] / ((r1^2)_i (r2^2)_{j-i})
    inner = []
    for j in range(nmax + 1):
        acc = 0
        for i in range(j + 1):
            acc = acc + q_binomial(j, i, q) * P1[i] * P2[j - i] / (
                poch1[i] * poch2[j - i]
            )
        inner.append(acc)
    out = []
    for n in range(nmax + 1):
        if n == 0:
            out.append(1 + 0 * x)
            continue
        pref = poch1[n] * poch2[n] / _shifted_poch(r1sq * r2sq, q, n)
        total = 0
        for j in range(n + 1):
            total = total + q_binomial(n, j, q) * B[n - j] * inner[j]
        out.append(pref * total)
    return out


def aw_A_sym(n, x, p: CondDensityParams):
    """Monic Askey-Wilson polynomial A_n in the probabilistic scaling."""
    return aw_A_sym_seq(n, x, p)[-1]


def aw_A_mixed(n, x, p: CondDensityParams):
    """The same polynomial as aw_A_sym through a single mixed sum.

    A_n = pref * sum_m (-1)**m q**C(m,2) [n,m]_q rho1**m
          P_{n-m}(x | z, rho2) P_m(y | x, rho1) / ((rho2^2)_{n-m} (rho1^2)_m)

    Note the role reversal in the second factor: the polynomial is taken at
    the conditioning point y with the running variable x as its parameter.
    Kept free of shared code with aw_A_sym so the two can cross-check.
    """
    q = p.q
    if q == 1:
        raise DomainError("the Askey-Wilson representations require q < 1")
    if n == 0:
        return 1 + 0 * x
    r1sq = p.rho1 * p.rho1
    r2sq = p.rho2 * p.rho2
    P_xz = asc_P_seq(n, x, p.z, p.rho2, q)
    P_yx = asc_P_seq(n, p.y, x, p.rho1, q)
    poch1 = _poch_list(r1sq, q, n)
    poch2 = _poch_list(r2sq, q, n)
    pref = poch1[n] * poch2[n] / _shifted_poch(r1sq * r2sq, q, n)
    total = 0
    for m in range(n + 1):
        sign = (-1) ** m
        total = total + (
            sign
            * q ** math.comb(m, 2)
            * q_binomial(n, m, q)
            * p.rho1**m
            * P_xz[n - m]
            * P_yx[m]
            / (poch2[n - m] * poch1[m])
        )
    return pref * total


def _poch0(t, n):
    """(t; 0)_n: equals 1 for n = 0 and 1 - t otherwise."""
    return 1 if n == 0 else 1 - t


def aw_D_free(n, x, a, b, c, d):
    """Closed form of aw_D at q = 0.

    D_1 = 2x - (a+b+c+d - abc - abd - acd - bcd)/(1 - abcd); for n >= 2 the
    polynomial is (1-ab)(1-cd) times a three-sum combination of q = 0
    Al-Salam-Chihara values.  Used as an independent cross-check of the
    q = 0 branch of aw_D.
    """
    if n == 0:
        return 1.0
    ab = a * b
    cd = c * d
    if n == 1:
        e1 = a + b + c + d
        e3 = a * b * c + a * b * d + a * c * d + b * c * d
        value = 2 * x - (e1 - e3) / _guard_factor(1 - ab * cd, "1 - abcd")
        return real_part(value) if isinstance(value, complex) else value
    Q1 = asc_Q_seq(n, x, a, b, 0)
    Q2 = asc_Q_seq(n, x, c, d, 0)

    def block(total_degree):
        acc = 0
        for i in range(total_degree + 1):
            acc = acc + Q1[i] * Q2[total_degree - i] / (
                _poch0(ab, i) * _poch0(cd, total_degree - i)
            )
        return acc

    # the per-degree prefactor survives the q -> 0 limit as (1-ab)(1-cd)
    value = (1 - ab) * (1 - cd) * (block(n) - 2 * x * block(n - 1) + block(n - 2))
    if isinstance(value, complex) and not isinstance(x, complex):
        return real_part(value)
    return value


def aw_A_free(n, x, p: CondDensityParams):
    """Closed form of the monic family at q = 0.

    A_1 = x - (y rho1 (1 - rho2^2) + z rho2 (1 - rho1^2)) / (1 - rho1^2 rho2^2).
    For n >= 2 only the m = 0 and m = 1 terms of the mixed-sum representation
    survive the q -> 0 limit, which leaves

        A_n = (1 - rho1^2) P_n(x|z, rho2, 0) - rho1 (y - rho1 x) P_{n-1}(x|z, rho2, 0).
    """
    r1sq = p.rho1 * p.rho1
    r2sq = p.rho2 * p.rho2
    if n == 0:
        return 1 + 0 * x
    if n == 1:
        num = p.y * p.rho1 * (1 - r2sq) + p.z * p.rho2 * (1 - r1sq)
        return x - num / (1 - r1sq * r2sq)
    P_xz = asc_P_seq(n, x, p.z, p.rho2, 0)
    return (1 - r1sq) * P_xz[n] - p.rho1 * (p.y - p.rho1 * x) * P_xz[n - 1]


# --- terminating basic hypergeometric oracle ---------------------------------


def _series_mul(a, b, length):
    return np.convolve(a, b)[:length]


def _series_inv(b, length):
    # power series reciprocal; b[0] must be nonzero
    _guard_factor(complex(b[0]), "a power series constant term")
    out = np.zeros(length, dtype=complex)
    out[0] = 1.0 / b[0]
    for k in range(1, length):
        acc = 0.0 + 0.0j
        top = min(k, len(b) - 1)
        for j in range(1, top + 1):
            acc += b[j] * out[k - j]
        out[k] = -acc / b[0]
    return out


def _series_poch(t, shift, count, length):
    """(t q**shift; q)_count as a truncated power series in q."""
    out = np.zeros(length, dtype=complex)
    out[0] = 1.0
    for i in range(count):
        deg = shift + i
        factor = np.zeros(min(length, deg + 1), dtype=complex)
        factor[0] = 1.0
        if deg < length:
            factor[deg] -= t
        else:
            factor = np.array([1.0 + 0.0j])
        out = _series_mul(out, factor, length)
    return out


def _phi43_limit_q0(n, x, a, b, c, d):
    """q -> 0 value of the terminating series form, via a Laurent expansion.

    The terminating sum has factors (q**-n; q)_k that individually blow up
    as q -> 0 while the full polynomial stays finite.  Rewriting
    (q**-n; q)_k / (q; q)_k = (-1)**k q**(C(k,2) - nk) [n,k]_q turns each
    term into q**E(k) times a function analytic at q = 0, with
    E(k) = C(k,2) - k(n-1) <= 0.  The limit is then the coefficient of q**0
    of the full Laurent expansion, which this helper extracts with truncated
    power series arithmetic.
    """
    ab, ac, ad = a * b, a * c, a * d
    theta = math.acos(x)
    u = a * cmath.exp(-1j * theta)
    v = a * cmath.exp(1j * theta)
    length = math.comb(n, 2) + 1
    euler = [_series_poch(1.0, 1, m, length) for m in range(n + 1)]  # (q; q)_m
    pref_num = _series_mul(
        _series_mul(_series_poch(ab, 0, n, length), _series_poch(ac, 0, n, length), length),
        _series_poch(ad, 0, n, length),
        length,
    )
    pref_den = _series_poch(a * b * c * d, n - 1, n, length)
    pref = _series_mul(pref_num, _series_inv(pref_den, length), length) / a**n
    total = 0.0 + 0.0j
    for k in range(n + 1):
        binom = _series_mul(
            euler[n],
            _series_mul(_series_inv(euler[k], length), _series_inv(euler[n - k], length), length),
            length,
        )
        numer = _series_mul(
            _series_mul(_series_poch(a * b * c * d, n - 1, k, length), _series_poch(u, 0, k, length), length),
            _series_poch(v, 0, k, length),
            length,
        )
        denom = _series_mul(
            _series_mul(_series_poch(ab, 0, k, length), _series_poch(ac, 0, k, length), length),
            _series_poch(ad, 0, k, length),
            length,
        )
        term = _series_mul(binom, _series_mul(numer, _series_inv(denom, length), length), length)
        term = _series_mul(term, pref, length)
        index = n * k - k - math.comb(k, 2)  # = -E(k)
        total += (-1) ** k * term[index]
    return total


def aw_phi43_oracle(n, x, params: AWComplexParams, q, dps=None):
    """Terminating basic hypergeometric evaluation of aw_D, as a test oracle.

    Evaluates the classical 4-phi-3 series for the Askey-Wilson polynomial
    at x = cos(theta) in [-1, 1]:

        pref * sum_k ((q**-n, abcd q**(n-1), a e^{-i theta}, a e^{i theta}; q)_k
                      / (ab, ac, ad, q; q)_k) q**k

    with pref = (ab, ac, ad; q)_n / (a**n (abcd q**(n-1); q)_n).  The series
    suffers cancellation of order q**(-C(n,2)), so it runs in mpmath with a
    precision chosen from n and |q| (override with dps).  At q = 0 the
    series form degenerates and the analytic limit is taken instead.

    Requires a != 0 and -1 < q < 1.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    q = qval(q)
    if not -1 < q < 1:
        raise DomainError("the terminating series form requires -1 < q < 1")
    a, b, c, d = params.a, params.b, params.c, params.d
    if a == 0:
        raise DomainError("the series prefactor divides by a**n; a must be nonzero")
    if abs(x) > 1 + 1e-12:
        raise DomainError(f"x must lie in [-1, 1], got {x!r}")
    x = min(1.0, max(-1.0, float(x)))
    if n == 0:
        return 1.0
    if q == 0:
        return float(real_part(_phi43_limit_q0(n, x, complex(a), complex(b), complex(c), complex(d))))

    import mpmath as mp

    if dps is None:
        lost = math.comb(n, 2) * max(0.0, -math.log10(abs(q)))
        dps = min(400, 30 + int(math.ceil(lost)))
    with mp.workdps(dps):
        qm = mp.mpf(q)
        am, bm, cm, dm = (mp.mpc(t) for t in (a, b, c, d))
        ab, ac, ad = am * bm, am * cm, am * dm
        lam = am * bm * cm * dm * qm ** (n - 1)
        theta = mp.acos(mp.mpf(x))
        u = am * mp.exp(-1j * theta)
        v = am * mp.exp(1j * theta)
        qminus = qm ** (-n)
        top = mp.mpc(1)
        bot = mp.mpc(1)
        total = mp.mpc(1)
        for k in range(1, n + 1):
            i = k - 1
            top *= (1 - qminus * qm**i) * (1 - lam * qm**i) * (1 - u * qm**i) * (1 - v * qm**i)
            for f in ((1 - ab * qm**i), (1 - ac * qm**i), (1 - ad * qm**i), (1 - qm**k)):
                if abs(f) < mp.mpf("1e-30"):
                    raise PoleError("a Pochhammer denominator vanished in the series")
                bot *= f
            total += top / bot * qm**k
        pref_num = mp.mpc(1)
        pref_den = mp.mpc(1)
        for i in range(n):
            pref_num *= (1 - ab * qm**i) * (1 - ac * qm**i) * (1 - ad * qm**i)
            pref_den *= 1 - lam * qm**i
        value = pref_num / (am**n * pref_den) * total
        re, im = float(mp.re(value)), float(mp.im(value))
    return real_part(complex(re, im))
