"""Invariant trace fields of pretzel FAL complements, built and compared exactly.

The field for ``n`` crossing circles is generated by the cusp shape
``2cos(pi/n)i = zeta_4 * (zeta_2n + zeta_2n^-1)``, which lives in the cyclotomic
field of conductor ``lcm(4, 2n)``.  Field equality between different ``n`` is
decided by comparing Galois stabilisers of the generators at a common level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .exactfield import (
    CycloElement,
    RatPolynomial,
    UnitSubgroup,
    fixed_fields_equal,
    galois_apply,
    minimal_polynomial,
    root_of_unity,
    stabilizer,
)
from .numtheory import euler_totient, lcm, units

__all__ = [
    "SCHEMA_VERSION",
    "TraceFieldDescriptor",
    "build_trace_field",
    "cm_field_check",
    "conductor",
    "cusp_generator",
    "euler_totient",
    "fields_equal",
    "fields_equal_at_level",
    "fields_equal_numeric",
    "is_quadratic_imaginary",
    "numeric_stabilizer",
    "twisted_cusp_element",
]

SCHEMA_VERSION = 1


def _check_n(n):
    if int(n) != n or n < 3:
        raise ValueError(f"n must be an integer >= 3 (the link is not hyperbolic otherwise), got {n}")


def conductor(n):
    """Level ``lcm(4, 2n)`` at which the cusp-shape generator is expressed."""
    return lcm(4, 2 * n)


def cusp_generator(n):
    """Exact ``2cos(pi/n) i`` in Q(zeta_N), N = lcm(4, 2n)."""
    _check_n(n)
    big = conductor(n)
    step = big // (2 * n)
    real = root_of_unity(big, step) + root_of_unity(big, -step)
    return root_of_unity(big, big // 4) * real


def twisted_cusp_element(n, sign=+1):
    """Exact twisted cusp shape ``2cos(pi/n)i / (1 + sign*cos(pi/n)i)``."""
    g = cusp_generator(n)
    return g / (1 + g * Fraction(sign, 2))


@dataclass(frozen=True)
class TraceFieldDescriptor:
    n: int
    conductor: int
    generator: CycloElement
    min_poly: RatPolynomial
    degree: int
    stabilizer: UnitSubgroup

    def verify(self):
        """Exact re-check of the stored data; raises ``ArithmeticError`` on mismatch."""
        if self.conductor != conductor(self.n):
            raise ArithmeticError(f"conductor {self.conductor} is wrong for n={self.n}")
        if self.generator != cusp_generator(self.n):
            raise ArithmeticError("stored generator is not 2cos(pi/n)i")
        if not self.min_poly.is_monic() or not self.min_poly(self.generator).is_zero():
            raise ArithmeticError("stored minimal polynomial does not vanish at the generator")
        if self.degree != self.min_poly.degree or self.degree != euler_totient(self.n):
            raise ArithmeticError("stored degree is inconsistent")
        if self.degree * self.stabilizer.order != euler_totient(self.conductor):
            raise ArithmeticError("stabilizer order does not match the degree")
        if any(galois_apply(a, self.generator) != self.generator for a in self.stabilizer.members):
            raise ArithmeticError("stored stabilizer moves the generator")
        return True

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "conductor": self.conductor,
            "generator": self.generator.to_json(),
            "min_poly": self.min_poly.to_json(),
            "degree": self.degree,
            "stabilizer": self.stabilizer.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported descriptor schema {data.get('schema_version')!r}")
        return cls(
            n=int(data["n"]),
            conductor=int(data["conductor"]),
            generator=CycloElement.from_json(data["generator"]),
            min_poly=RatPolynomial.from_json(data["min_poly"]),
            degree=int(data["degree"]),
            stabilizer=UnitSubgroup.from_json(data["stabilizer"]),
        )


@lru_cache(maxsize=512)
def build_trace_field(n):
    """Exact descriptor of the invariant trace field for ``n`` crossing circles."""
    _check_n(n)
    g = cusp_generator(n)
    mp = minimal_polynomial(g)
    stab = stabilizer(g)
    deg = mp.degree
    if deg != euler_totient(n):
        raise ArithmeticError(f"degree {deg} of the trace field differs from phi({n})")
    if deg * stab.order != euler_totient(g.modulus):
        raise ArithmeticError("Galois correspondence violated: |stabilizer| * degree != phi(N)")
    return TraceFieldDescriptor(n, g.modulus, g, mp, deg, stab)


def is_quadratic_imaginary(n):
    _check_n(n)
    return euler_totient(n) == 2


def fields_equal(m, n):
    """Whether the trace fields for ``m`` and ``n`` crossing circles coincide."""
    _check_n(m)
    _check_n(n)
    if m == n:
        return True
    a, b = build_trace_field(m), build_trace_field(n)
    if a.degree != b.degree:
        return False
    return fixed_fields_equal(a.stabilizer, b.stabilizer)


def fields_equal_at_level(m, n):
    """Same decision by explicit re-embedding at ``L = lcm(N_m, N_n)``.

    Raises both generators to level ``L`` and computes their stabilisers in
    (Z/L)^* from scratch.  Much slower; intended for cross-checking small cases.
    """
    a, b = cusp_generator(m), cusp_generator(n)
    level = lcm(a.modulus, b.modulus)
    return stabilizer(a.at_level(level)) == stabilizer(b.at_level(level))


@lru_cache(maxsize=512)
def numeric_stabilizer(n, prec=64):
    """Stabiliser of the generator found from floating-point complex embeddings."""
    g = cusp_generator(n)
    with mpmath.workprec(prec):
        base = g.evaluate(1, prec)
        tol = mpmath.mpf(2) ** (-(prec // 2))
        members = [a for a in units(g.modulus) if abs(g.evaluate(a, prec) - base) < tol]
    return UnitSubgroup(g.modulus, members)


def fields_equal_numeric(m, n, prec=64):
    """Cross-check of :func:`fields_equal` through numeric embeddings."""
    if m == n:
        return True
    return fixed_fields_equal(numeric_stabilizer(m, prec), numeric_stabilizer(n, prec))


def cm_field_check(desc):
    """The field is a totally imaginary quadratic extension of a real subfield of half degree.

    Checks exactly that the generator is not real, that its square is real
    (fixed by complex conjugation), and that the square generates a field of
    degree ``phi(n)/2``.
    """
    g = desc.generator
    sq = g * g
    if g.conjugate() == g or sq.conjugate() != sq:
        return False
    return 2 * minimal_polynomial(sq).degree == desc.degree
