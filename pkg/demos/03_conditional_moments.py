"""Closed-form conditional moments and the expansion built on them.

For the Markov triple (Y, X, Z) the conditional expectation of H_n(X | q)
given Y = y and Z = z has two structurally independent closed forms, exact
in rational arithmetic.  Those moments are also the coefficients of a
q-Hermite expansion of the two-sided density, whose truncation error this
script tabulates.
"""

from fractions import Fraction

from qaw import (
    CondDensityParams,
    c_n_gaussian,
    c_n_main,
    c_n_via_P,
    phi_cond,
    phi_expansion_partial,
)

p = CondDensityParams(0.5, -0.3, 0.8, 0.4, 0.5)
print("two routes to the same moment (floating point)")
print(f"{'n':>3} {'double sum':>22} {'single mixed sum':>22}")
for n in range(7):
    print(f"{n:>3} {c_n_main(n, p):>22.15f} {c_n_via_P(n, p):>22.15f}")

print()
print("the agreement is exact over rationals, not just to roundoff")
pr = CondDensityParams(
    Fraction(2, 5), Fraction(-3, 5), Fraction(1, 2), Fraction(7, 10), Fraction(1, 2)
)
for n in (3, 6, 9):
    value = c_n_main(n, pr)
    assert value == c_n_via_P(n, pr)
    print(f"  c_{n} = {value}")

print()
print("degenerate regimes")
free = CondDensityParams(0.5, 0.0, 0.8, 0.4, 0.5)
print(f"  rho1 = 0:  c_3 = {c_n_main(3, free):.12f}  (depends on z only)")
print(f"  q = 1:     c_3 = {c_n_gaussian(3, 0.5, 0.8, -0.3, 0.4):.12f}  (Hermite closed form)")

print()
print("moment expansion of the two-sided density phi at x = 0.6")
x = 0.6
exact = phi_cond(x, p).value
print(f"  closed form: {exact:.15f}")
print(f"{'terms':>8} {'partial sum':>22} {'abs error':>14}")
for N in (5, 10, 20, 40):
    partial = phi_expansion_partial(x, p, N)
    print(f"{N:>8} {partial:>22.15f} {abs(partial - exact):>14.3e}")
