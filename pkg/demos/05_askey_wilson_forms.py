"""Four routes to the Askey-Wilson polynomials with conjugate parameters.

The real bundle (y, rho1, z, rho2, q) maps to complex parameters
(a, b, c, d) with b = conj(a), d = conj(c), all inside the unit disk.  The
monic family A_n can be evaluated through a symmetric double sum, an
independent mixed sum, a rescaling of the continuous-scaling family D_n,
or a high-precision terminating-series oracle; all four must agree.  At
q = 0 everything collapses to short closed forms.
"""

import math

from qaw import (
    CondDensityParams,
    aw_A_free,
    aw_A_mixed,
    aw_A_sym,
    aw_D,
    aw_D_free,
    aw_phi43_oracle,
    map_params,
)

p = CondDensityParams(0.5, -0.3, 0.8, 0.4, 0.5)
params = map_params(p)
print("parameter map for the bundle", p)
print(f"  a = {params.a:.12f}")
print(f"  b = {params.b:.12f}   (= conj(a))")
print(f"  c = {params.c:.12f}")
print(f"  d = {params.d:.12f}   (= conj(c))")
print(f"  |a| = {abs(params.a):.12f} = |rho1|,  a*b = {(params.a * params.b).real:.12f} = rho1^2")

x = 0.6
q = p.q
xa = x * math.sqrt(1 - q) / 2
print()
print(f"A_n(x = {x}) through four independent routes")
print(f"{'n':>3} {'symmetric':>18} {'mixed':>18} {'rescaled D_n':>18} {'series oracle':>18}")
for n in range(6):
    rescale = (1 - q) ** (-n / 2)
    print(
        f"{n:>3}"
        f" {aw_A_sym(n, x, p):>18.12f}"
        f" {aw_A_mixed(n, x, p):>18.12f}"
        f" {aw_D(n, xa, params, q) * rescale:>18.12f}"
        f" {aw_phi43_oracle(n, xa, params, q) * rescale:>18.12f}"
    )

print()
print("swapping the two conditioning legs leaves the polynomial unchanged")
swapped = p.swapped()
for n in (2, 5):
    print(f"  n = {n}: {aw_A_mixed(n, x, p):.12f} vs {aw_A_mixed(n, x, swapped):.12f}")

print()
print("free case: q = 0 closed forms against the general recurrences")
p0 = CondDensityParams(0.5, -0.3, 0.8, 0.4, 0.0)
params0 = map_params(p0)
print(f"{'n':>3} {'A_n general':>18} {'A_n closed':>18} {'D_n general':>18} {'D_n closed':>18}")
for n in range(5):
    print(
        f"{n:>3}"
        f" {aw_A_sym(n, x, p0):>18.12f}"
        f" {aw_A_free(n, x, p0):>18.12f}"
        f" {aw_D(n, x / 2, params0, 0).real:>18.12f}"
        f" {aw_D_free(n, x / 2, params0.a, params0.b, params0.c, params0.d).real:>18.12f}"
    )
