"""Tour of the polynomial families and the bridges between them.

Every family is evaluated by forward three-term recurrence.  The base q
interpolates between the free case (q = 0, Chebyshev) and the Gaussian
case (q = 1, probabilistic Hermite); this script prints a few ladders and
checks the advertised collapses numerically.
"""

import math

from qaw import asc_P, chebyshev_U, hermite_h, hermite_H


def ladder(label, values):
    print(f"{label:>28}: " + "  ".join(f"{v: .6f}" for v in values))


x = 0.6
print(f"q-Hermite ladders H_0..H_5 at x = {x}")
for q in (0.0, 0.5, 1.0):
    ladder(f"q = {q}", [hermite_H(n, x, q) for n in range(6)])

print()
print("free case (q = 0) is the Chebyshev U ladder at x/2")
ladder("H_n(x | 0)", [hermite_H(n, x, 0) for n in range(6)])
ladder("U_n(x / 2)", [chebyshev_U(n, x / 2) for n in range(6)])

print()
print("the two q-Hermite scalings differ by powers of sqrt(1 - q)")
q = 0.5
s = math.sqrt(1 - q)
ladder("H_n(x | q)", [hermite_H(n, x, q) for n in range(6)])
ladder("h_n(x s/2 | q) / (s/2)^n", [hermite_h(n, x * s / 2, q) / (s / 2) ** n for n in range(6)])

print()
print("Al-Salam-Chihara with rho = 0 collapses onto the q-Hermite ladder")
ladder("P_n(x | y=0.4, rho=0, q)", [asc_P(n, x, 0.4, 0.0, q) for n in range(6)])
ladder("H_n(x | q)", [hermite_H(n, x, q) for n in range(6)])

print()
print("at q = 1, P_n shifts and scales the ordinary Hermite polynomials")
y, rho = 0.4, 0.7
scale = math.sqrt(1 - rho * rho)
ladder("P_n(x | y, rho, 1)", [asc_P(n, x, y, rho, 1) for n in range(6)])
ladder(
    "scaled H_n((x-rho y)/scale | 1)",
    [scale**n * hermite_H(n, (x - rho * y) / scale, 1) for n in range(6)],
)
