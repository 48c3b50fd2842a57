"""
Closed-form geometry of the pretzel FAL complements at arbitrary precision.

Real quantities are :mod:`mpmath` numbers computed at an explicit binary
precision (``prec``, default 256 bits); every function takes the precision as
an argument and returns a value rounded to it.  Quantities that are algebraic
(cusp shapes, Gram entries) are also returned in exact form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .exactfield import CycloElement, RatPolynomial, minimal_polynomial, root_of_unity
from .tracefield import cusp_generator, twisted_cusp_element

DEFAULT_PREC = 256
MIN_PREC = 32
_GUARD = 24

UNTWISTED = "untwisted"
TWISTED_PLUS = "twisted+"
TWISTED_MINUS = "twisted-"
KNOT_CIRCLE = "knot-circle"
CUSP_KINDS = (UNTWISTED, TWISTED_PLUS, TWISTED_MINUS, KNOT_CIRCLE)


def _check_prec(prec):
    if prec < MIN_PREC:
        raise ValueError(f"precision must be at least {MIN_PREC} bits, got {prec}")


def _check_n(n):
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")


@lru_cache(maxsize=64)
def _zeta_even(prec):
    # zeta(2k) for k = 1..K, enough terms for the worst case r = 1/4 below.
    terms = prec // 2 + 8
    with mpmath.workprec(prec):
        return tuple(mpmath.zeta(2 * k) for k in range(1, terms + 1))


def lobachevsky(theta, prec=DEFAULT_PREC):
    """Lobachevsky function ``-int_0^theta log|2 sin t| dt``.

    After reducing ``theta`` into ``[-pi/2, pi/2]`` (the function is odd and
    pi-periodic) we sum

        L(t) = t (1 - log|2t|) + t * sum_{k>=1} zeta(2k) r^k / (k (2k+1)),  r = (t/pi)^2.

    With ``zeta(2k) <= pi^2/6`` and ``r <= 1/4`` the tail after ``K`` terms is at
    most ``|t| (pi^2/6) r^(K+1) / ((K+1)(2K+3)(1-r))``; summation stops once
    that bound drops below ``2^-(prec+8)``.
    """
    _check_prec(prec)
    wp = prec + _GUARD
    with mpmath.workprec(wp):
        pi = mpmath.pi
        t = mpmath.mpf(theta)
        t -= pi * mpmath.nint(t / pi)
        if not t:
            return mpmath.mpf(0)
        r = (t / pi) ** 2
        zetas = _zeta_even(wp)
        eps = mpmath.mpf(2) ** (-(prec + 8))
        c = pi ** 2 / 6 * abs(t) / (1 - r)
        total = mpmath.mpf(0)
        rk = mpmath.mpf(1)
        for k in range(1, len(zetas) + 1):
            rk *= r
            total += zetas[k - 1] * rk / (k * (2 * k + 1))
            if c * rk * r / ((k + 1) * (2 * k + 3)) < eps:
                break
        else:
            raise ArithmeticError("Lobachevsky series did not reach the requested accuracy")
        value = t * (1 - mpmath.log(abs(2 * t))) + t * total
    with mpmath.workprec(prec):
        return +value


def figure_eight_volume(prec=DEFAULT_PREC):
    """Volume of the figure-eight knot complement, ``6 L(pi/3)``."""
    with mpmath.workprec(prec + _GUARD):
        v = 6 * lobachevsky(mpmath.pi / 3, prec + _GUARD)
    with mpmath.workprec(prec):
        return +v


def octahedron_volume(prec=DEFAULT_PREC):
    """``v_oct = 8 L(pi/4)``, the regular ideal octahedron."""
    with mpmath.workprec(prec + _GUARD):
        v = 8 * lobachevsky(mpmath.pi / 4, prec + _GUARD)
    with mpmath.workprec(prec):
        return +v


def orbifold_volume_f(n, prec=DEFAULT_PREC):
    """``f(n) = vol(M_n) / 8n = L(pi/4 + pi/2n) + L(pi/4 - pi/2n)``; ``n`` may be real."""
    _check_n(n)
    _check_prec(prec)
    wp = prec + _GUARD
    with mpmath.workprec(wp):
        a = mpmath.pi / 4
        b = mpmath.pi / (2 * mpmath.mpf(n))
        v = lobachevsky(a + b, wp) + lobachevsky(a - b, wp)
    with mpmath.workprec(prec):
        return +v


def orbifold_volume_f_prime(n, prec=DEFAULT_PREC):
    """Derivative ``f'(n) = (pi/2n^2) log|sin(pi/4 + pi/2n) / sin(pi/4 - pi/2n)|``."""
    _check_n(n)
    with mpmath.workprec(prec + _GUARD):
        n = mpmath.mpf(n)
        a = mpmath.pi / 4
        b = mpmath.pi / (2 * n)
        v = mpmath.pi / (2 * n ** 2) * mpmath.log(abs(mpmath.sin(a + b) / mpmath.sin(a - b)))
    with mpmath.workprec(prec):
        return +v


def volume(n, prec=DEFAULT_PREC):
    """``vol(M_n) = 8n (L(pi/4 + pi/2n) + L(pi/4 - pi/2n))``; shared by every half-twist partner."""
    f = orbifold_volume_f(n, prec + _GUARD)
    with mpmath.workprec(prec):
        return +(8 * n * f)


@dataclass(frozen=True)
class PackingData:
    """Radii of the circle packing, with the ring of ``n`` unit circles."""

    n: int
    white_outer: mpmath.mpf
    white_inner: mpmath.mpf
    unit_circle_count: int
    shaded_small: mpmath.mpf
    shaded_large: mpmath.mpf
    prec: int

    @property
    def sec_residual(self):
        """``1/(2r) + 1/(2R) - sec(pi/n)``; zero up to rounding."""
        with mpmath.workprec(self.prec):
            return 1 / (2 * self.shaded_small) + 1 / (2 * self.shaded_large) - mpmath.sec(mpmath.pi / self.n)


def packing_radii(n, prec=DEFAULT_PREC):
    _check_n(n)
    with mpmath.workprec(prec + _GUARD):
        th = mpmath.pi / n
        csc, tan = mpmath.csc(th), mpmath.tan(th)
        r = tan * (csc - 1)
        big_r = tan * (csc + 1)
        outer, inner = csc + 1, csc - 1
    with mpmath.workprec(prec):
        data = PackingData(n, +outer, +inner, n, +r, +big_r, prec)
        if abs(data.sec_residual) > mpmath.mpf(2) ** (-(prec - 8)):
            raise ArithmeticError("packing radii violate 1/d + 1/D = sec(pi/n)")
    return data


def tile_shape(n, prec=DEFAULT_PREC):
    """Shape ``i sec(pi/n)`` of one rectangular tile of a crossing-circle cusp."""
    _check_n(n)
    with mpmath.workprec(prec):
        return mpmath.mpc(0, mpmath.sec(mpmath.pi / n))


@dataclass(frozen=True)
class CuspShapeValue:
    n: int
    kind: str
    exact: CycloElement | None
    numeric: mpmath.mpc | None
    meridian: int | None = None
    longitude_lower_bound: int | None = None
    prec: int = DEFAULT_PREC


def cusp_shape(n, kind=UNTWISTED, prec=DEFAULT_PREC):
    """Cusp shape of a crossing-circle cusp (untwisted or either twist sign).

    ``kind="knot-circle"`` gives no shape; it returns the bounds for the knot
    circle cusp of the partner with a single untwisted crossing circle:
    meridian exactly 2 and longitude at least ``2n`` in a fixed horoball expansion.
    """
    _check_n(n)
    if kind not in CUSP_KINDS:
        raise ValueError(f"unknown cusp kind {kind!r}; expected one of {CUSP_KINDS}")
    if kind == KNOT_CIRCLE:
        return CuspShapeValue(n, kind, None, None, meridian=2, longitude_lower_bound=2 * n, prec=prec)
    with mpmath.workprec(prec + _GUARD):
        c = mpmath.cos(mpmath.pi / n)
        g = mpmath.mpc(0, 2 * c)
        if kind == UNTWISTED:
            exact = cusp_generator(n)
            value = g
        else:
            sign = 1 if kind == TWISTED_PLUS else -1
            exact = twisted_cusp_element(n, sign)
            value = g / (1 + sign * mpmath.mpc(0, c))
    with mpmath.workprec(prec):
        return CuspShapeValue(n, kind, exact, +value, prec=prec)


@dataclass(frozen=True)
class GeodesicData:
    n: int
    perpendicular_length: mpmath.mpf
    closed_length: mpmath.mpf
    gram_entry: Fraction | CycloElement
    gram_numeric: mpmath.mpf
    prec: int

    @property
    def gram_entry_text(self):
        g = self.gram_entry
        if isinstance(g, Fraction):
            return str(g.numerator) if g.denominator == 1 else f"{g.numerator}/{g.denominator}"
        return repr(g)


def sin_squared_exact(n):
    """``sin^2(pi/n) = (2 - zeta_n - zeta_n^-1)/4`` in Q(zeta_n)."""
    z = root_of_unity(n, 1) + root_of_unity(n, -1)
    return (2 - z) * Fraction(1, 4)


@lru_cache(maxsize=256)
def gram_entry_exact(n):
    """Exact Gram entry ``-2cosh(l(gamma+)) = -2(1+s)/(1-s)``, ``s = sin^2(pi/n)``.

    Returned as a :class:`~fractions.Fraction` when rational.
    """
    _check_n(n)
    s = sin_squared_exact(n)
    entry = -2 * (1 + s) / (1 - s)
    return entry.to_rational() if entry.is_rational() else entry


def perpendicular_length(n, prec=DEFAULT_PREC):
    """``l(gamma+) = log((csc(pi/n) + 1) / (csc(pi/n) - 1))``."""
    _check_n(n)
    with mpmath.workprec(prec + _GUARD):
        csc = mpmath.csc(mpmath.pi / n)
        v = mpmath.log((csc + 1) / (csc - 1))
    with mpmath.workprec(prec):
        return +v


def closed_geodesic_length(n, prec=DEFAULT_PREC):
    """``l(gamma) = 2 l(gamma+)``, without the exact Gram entry."""
    v = perpendicular_length(n, prec + _GUARD)
    with mpmath.workprec(prec):
        return +(2 * v)


def geodesic_data(n, prec=DEFAULT_PREC):
    """Lengths of the perpendicular ``gamma+`` between the two outer white planes and of the
    closed geodesic ``gamma = gamma+ u gamma-``, plus the corresponding Gram entry."""
    _check_n(n)
    perp = perpendicular_length(n, prec + _GUARD)
    with mpmath.workprec(prec + _GUARD):
        closed = 2 * perp
        gram = -2 * mpmath.cosh(perp)
    with mpmath.workprec(prec):
        return GeodesicData(n, +perp, +closed, gram_entry_exact(n), +gram, prec)


def vinberg_entry_is_integral(n):
    """Whether the exact Gram entry is an algebraic integer; the minimal polynomial is the witness."""
    entry = gram_entry_exact(n)
    if isinstance(entry, Fraction):
        witness = RatPolynomial([-entry, 1])
    else:
        witness = minimal_polynomial(entry)
    return witness.is_integral(), witness
