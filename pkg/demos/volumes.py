"""Volumes, the Lobachevsky function and the orbifold volume limit.

f(n) = vol(M_n) / 8n is the volume of the common quotient orbifold. It climbs
monotonically toward 2 L(pi/4), half the volume of the regular ideal octahedron.
"""

import mpmath

from pretzelfal import hypgeom

PREC = 256
mpmath.mp.prec = PREC

L = hypgeom.lobachevsky
fig8 = hypgeom.figure_eight_volume(PREC)
print("figure-eight volume  ", mpmath.nstr(fig8, 30))
print("vol(M6) / fig8       ", mpmath.nstr(hypgeom.volume(6, PREC) / fig8, 30))

limit = 2 * L(mpmath.pi / 4, PREC)
print("2 L(pi/4)            ", mpmath.nstr(limit, 30))
print()
print("n        f(n)                        gap to limit")
for n in (3, 4, 5, 10, 100, 10 ** 3, 10 ** 4, 10 ** 6):
    f = hypgeom.orbifold_volume_f(n, PREC)
    print(f"{n:<8} {mpmath.nstr(f, 25):<27} {mpmath.nstr(limit - f, 5)}")

# the geodesic lengths that feed the arithmeticity thresholds
print()
for n in (7, 14, 15, 50):
    g = hypgeom.geodesic_data(n, PREC)
    integral, poly = hypgeom.vinberg_entry_is_integral(n)
    print(f"n={n:<3} closed geodesic {mpmath.nstr(g.closed_length, 15)}  Gram entry root of {poly}, integral={integral}")
