"""Shared test utilities: exact coefficient extraction and parameter grids."""

import math
import random
from fractions import Fraction

from qaw import CondDensityParams

# rational parameter values reused across exactness tests
RATIONAL_QS = (Fraction(-1, 2), Fraction(0), Fraction(3, 10), Fraction(1, 2), Fraction(9, 10))


def leading_coefficient(poly, n):
    """Exact leading coefficient of a degree-n polynomial via finite differences.

    Evaluates poly at the integers 0..n and forms the n-th forward difference
    divided by n!.  Exact over Fractions; any contribution from degrees < n
    cancels identically.
    """
    total = Fraction(0)
    for i in range(n + 1):
        total += (-1) ** (n - i) * math.comb(n, i) * Fraction(poly(Fraction(i)))
    return total / math.factorial(n)


def seeded_bundles(count, seed=20260816):
    """Deterministic pseudo-random valid parameter bundles for cross-checks."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = rng.choice([-1, 1]) * rng.uniform(0.15, 0.8)
        half = 2 / math.sqrt(1 - q)
        y = rng.uniform(-0.9, 0.9) * half
        z = rng.uniform(-0.9, 0.9) * half
        rho1 = rng.choice([-1, 1]) * rng.uniform(0.15, 0.75)
        rho2 = rng.choice([-1, 1]) * rng.uniform(0.15, 0.75)
        out.append(CondDensityParams(y, rho1, z, rho2, q))
    return out
