#!/usr/bin/env python3
"""High-precision reference values for the frozen constants in the Rust tests.

Evaluates the built-in maps with 60-digit arithmetic (mpmath) so the
double-precision implementation can be checked against an independent
evaluator. Constants are taken as their f64-rounded values (Python floats),
matching what the implementation actually computes with.

Run: python3 tools/reference_values.py
"""

from mpmath import mp, mpf, cos, sin, pi

mp.dps = 60

ALPHA = mpf(0.00137)
BETA = mpf(0.00159)


def p_map(x, y):
    s = x + ALPHA
    dy = (cos(2 * pi * s) + 1) / 2 + mpf(0.0234) * sin(4 * pi * s) ** 2 * (
        sin(6 * pi * s) + mpf(0.3754) * cos(26 * pi * s)
    )
    return x, y + dy


def q_map(x, y):
    s = y + BETA
    dx = (cos(2 * pi * s) + 1) / 2 + mpf(0.0213) * sin(4 * pi * s) ** 2 * (
        sin(6 * pi * s) + mpf(0.4243) * cos(22 * pi * s)
    )
    return x + dx, y


def r_map(x, y):
    dx = -mpf(0.0127) * sin(4 * pi * (x + ALPHA)) + mpf(0.000824) * sin(10 * pi * y)
    dy = -mpf(0.0176) * sin(4 * pi * (y + BETA)) + mpf(0.000631) * sin(12 * pi * y)
    return x + dx, y + dy


def f1(x, y):
    return q_map(*p_map(x, y))


def f2(x, y):
    return r_map(*q_map(*p_map(x, y)))


def show(label, pt):
    print(f"{label}: ({mp.nstr(pt[0], 25)}, {mp.nstr(pt[1], 25)})")


show("f1(0.25, 0.25)", f1(mpf(0.25), mpf(0.25)))
show("f2(0, 0)      ", f2(mpf(0), mpf(0)))
show("P(0.25, 0.25) ", p_map(mpf(0.25), mpf(0.25)))
show("example3(0.2, 0.7)", (mpf(0.2) + cos(2 * pi * mpf(0.7)), mpf(0.7) + sin(2 * pi * mpf(0.7)) / 100))

# Short f1 orbit from (0.123, 0.456): orbit-segment rotation vector at a few T.
x, y = mpf(0.123), mpf(0.456)
x0, y0 = x, y
for t in range(1, 17):
    x, y = f1(x, y)
    if t in (1, 2, 4, 8, 16):
        show(f"f1 orbit T={t:<2} vector", ((x - x0) / t, (y - y0) / t))

# Mean displacement of the shear profiles: the oscillatory parts integrate to 0,
# so each profile has mean exactly 1/2.  Check by midpoint quadrature.
m = 1 << 14
tot = mpf(0)
for i in range(m):
    s = (mpf(i) + mpf(0.5)) / m
    tot += p_map(s, mpf(0))[1]
print("mean of P displacement profile:", mp.nstr(tot / m, 25))
