"""Arithmeticity, commensurability and symmetry bookkeeping for pretzel FALs.

The load-bearing arithmeticity rules are the degree rule (a non-compact
arithmetic manifold has an imaginary quadratic invariant trace field) and the
exact Vinberg witness for ``n = 6``.  Short-geodesic rules are attached only
as corroboration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

import mpmath

from . import hypgeom
from .exactfield import format_rational
from .numtheory import euler_totient
from .tracefield import build_trace_field, is_quadratic_imaginary

ARITHMETIC = "arithmetic"
NON_ARITHMETIC = "non-arithmetic"

# geodesic-length constants of the short-geodesic theorem for arithmetic link complements
NR_SHORT = Decimal("0.862554627")
NR_LONG = Decimal("1.9248473002")
NR_DISCRIMINANTS = (1, 2, 3, 7, 11, 15, 19)

INFINITE = "infinite"
UNKNOWN = "unknown"
SNAPPY_SYM6 = (48, 96)

RULE_KNOWN = "known-arithmetic"
RULE_DEGREE = "degree"
RULE_VINBERG = "vinberg"
RULE_THRESHOLD = "geodesic-threshold"
RULE_NR_TABLE = "nr-table"

# conclusions an evidence item can carry
SUPPORTS_ARITHMETIC = "arithmetic"
SUPPORTS_NON_ARITHMETIC = "non-arithmetic"
INCONCLUSIVE = "inconclusive"
UNAVAILABLE = "unavailable"


class MissingDataError(ValueError):
    """A required external constant or data file was not supplied."""


def _check_n(n):
    if int(n) != n or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n}")


@dataclass(frozen=True)
class PretzelFal:
    """``M_n`` or a half-twist partner, identified by its twist vector."""

    n: int
    twists: tuple = ()

    def __post_init__(self):
        _check_n(self.n)
        tw = tuple(int(t) for t in (self.twists or (0,) * self.n))
        if len(tw) != self.n:
            raise ValueError(f"twist vector has length {len(tw)}, expected {self.n}")
        if any(t not in (0, 1) for t in tw):
            raise ValueError("twist entries must be 0 or 1")
        object.__setattr__(self, "twists", tw)

    @classmethod
    def parse(cls, n, text=None):
        if text is None or text == "":
            return cls(n)
        if any(ch not in "01" for ch in text):
            raise ValueError(f"twist string must contain only 0 and 1, got {text!r}")
        return cls(n, tuple(int(ch) for ch in text))

    @property
    def is_untwisted(self):
        return not any(self.twists)

    @property
    def is_prime_family(self):
        """Twist vector ``(0, 1, ..., 1)``: the partner with one untwisted crossing circle."""
        return self.twists == (0,) + (1,) * (self.n - 1)

    @property
    def kind(self):
        if self.is_untwisted:
            return "M_n"
        if self.is_prime_family:
            return "M'_n"
        return "partner"

    @property
    def twist_string(self):
        return "".join(str(t) for t in self.twists)

    @property
    def label(self):
        return f"P{self.n}({self.twist_string})"


# external short-geodesic table


@dataclass(frozen=True)
class NeumannReidEntry:
    length: Decimal
    d: int
    source: str

    @property
    def tolerance(self):
        # half a unit in the last printed digit
        exp = self.length.as_tuple().exponent
        return Decimal(5) * Decimal(10) ** (exp - 1)


@dataclass(frozen=True)
class NeumannReidTable:
    entries: tuple = ()
    path: str | None = None

    @property
    def loaded(self):
        return bool(self.entries)

    @classmethod
    def from_json(cls, data, path=None):
        if not isinstance(data, list):
            raise ValueError("geodesic table must be a JSON list of {length, d, source} records")
        out = []
        for i, rec in enumerate(data):
            try:
                length = Decimal(str(rec["length"]))
                d = int(rec["d"])
                source = str(rec["source"]).strip()
            except (KeyError, TypeError, InvalidOperation) as exc:
                raise ValueError(f"record {i} is malformed: {exc}") from None
            if not (NR_SHORT < length <= NR_LONG):
                raise ValueError(f"record {i}: length {length} outside ({NR_SHORT}, {NR_LONG}]")
            if d not in NR_DISCRIMINANTS:
                raise ValueError(f"record {i}: d={d} not in {NR_DISCRIMINANTS}")
            if not source:
                raise ValueError(f"record {i}: a non-empty source is required")
            out.append(NeumannReidEntry(length, d, source))
        return cls(tuple(out), None if path is None else str(path))

    @classmethod
    def load(cls, path):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise MissingDataError(f"cannot read geodesic table {path}: {exc}") from None
        return cls.from_json(json.loads(text), path)

    def matches(self, length):
        x = Decimal(mpmath.nstr(length, 30, strip_zeros=False))
        return [e for e in self.entries if abs(e.length - x) <= e.tolerance]


def bundled_table_path():
    return Path(__file__).with_name("data") / "nr_table.json"


# arithmeticity


@dataclass(frozen=True)
class Evidence:
    rule: str
    conclusion: str
    detail: str
    load_bearing: bool = False

    def to_json(self):
        return {"rule": self.rule, "conclusion": self.conclusion, "detail": self.detail,
                "load_bearing": self.load_bearing}


@dataclass(frozen=True)
class ArithmeticityVerdict:
    n: int
    verdict: str
    evidence: tuple

    @property
    def arithmetic(self):
        return self.verdict == ARITHMETIC

    @property
    def codes(self):
        return tuple(e.rule for e in self.evidence if e.conclusion != UNAVAILABLE)

    def consistent(self):
        """No evidence item points against the verdict, and some load-bearing item supports it."""
        against = SUPPORTS_NON_ARITHMETIC if self.arithmetic else SUPPORTS_ARITHMETIC
        if any(e.conclusion == against for e in self.evidence):
            return False
        return any(e.load_bearing and e.conclusion == self.verdict for e in self.evidence)

    def to_json(self):
        return {"n": self.n, "verdict": self.verdict, "evidence": [e.to_json() for e in self.evidence]}


def _geodesic_evidence(n, table, prec):
    if n < 7:
        return []
    ell = hypgeom.closed_geodesic_length(n, prec)
    shown = mpmath.nstr(ell, 12)
    if ell < mpmath.mpf(str(NR_SHORT)):
        return [Evidence(RULE_THRESHOLD, SUPPORTS_NON_ARITHMETIC,
                         f"closed geodesic of length {shown} < {NR_SHORT}")]
    if ell >= mpmath.mpf(str(NR_LONG)):
        return []
    if table is None or not table.loaded:
        return [Evidence(RULE_NR_TABLE, UNAVAILABLE,
                         "corroboration unavailable: external table not loaded")]
    hits = table.matches(ell)
    if hits:
        vals = ", ".join(f"{h.length} (d={h.d})" for h in hits)
        return [Evidence(RULE_NR_TABLE, INCONCLUSIVE, f"length {shown} matches table values {vals}")]
    return [Evidence(RULE_NR_TABLE, SUPPORTS_NON_ARITHMETIC,
                     f"length {shown} < {NR_LONG} matches none of {len(table.entries)} table values")]


def is_arithmetic(n, nr_table=None, prec=hypgeom.DEFAULT_PREC):
    """Arithmeticity verdict for ``M_n`` (and every half-twist partner), with its evidence chain."""
    _check_n(n)
    ev = []
    phi = euler_totient(n)
    if n in (3, 4):
        ev.append(Evidence(RULE_KNOWN, SUPPORTS_ARITHMETIC,
                           "known arithmetic case", load_bearing=True))
    if is_quadratic_imaginary(n):
        field = build_trace_field(n).min_poly
        ev.append(Evidence(RULE_DEGREE, INCONCLUSIVE,
                           f"phi({n}) = 2; trace field defined by {field} is imaginary quadratic"))
        integral, witness = hypgeom.vinberg_entry_is_integral(n)
        entry = hypgeom.gram_entry_exact(n)
        if integral:
            ev.append(Evidence(RULE_VINBERG, INCONCLUSIVE,
                               f"Gram entry {format_rational(entry)} is an algebraic integer ({witness})"))
        else:
            ev.append(Evidence(RULE_VINBERG, SUPPORTS_NON_ARITHMETIC,
                               f"Gram entry {format_rational(entry)} is not an algebraic integer; "
                               f"minimal polynomial {witness}", load_bearing=True))
    else:
        ev.append(Evidence(RULE_DEGREE, SUPPORTS_NON_ARITHMETIC,
                           f"phi({n}) = {phi} != 2; trace field is not imaginary quadratic",
                           load_bearing=True))
    ev.extend(_geodesic_evidence(n, nr_table, prec))
    verdict = ARITHMETIC if n in (3, 4) else NON_ARITHMETIC
    out = ArithmeticityVerdict(n, verdict, tuple(ev))
    if not out.consistent():
        raise ArithmeticError(f"contradictory evidence for n={n}: {out}")
    return out


# commensurability


def commensurability_key(m):
    """Label of the commensurability class; classes are exactly the fibres of ``n``."""
    return f"C{m.n}"


@dataclass(frozen=True)
class CommensurabilityResult:
    commensurable: bool
    case: str
    reason: str

    def __bool__(self):
        return self.commensurable


def commensurable(a, b, prec=hypgeom.DEFAULT_PREC):
    if a.n == b.n:
        return CommensurabilityResult(True, "same-n",
                                      f"both commensurable with the reflection orbifold of the n={a.n} polyhedron")
    ar_a, ar_b = a.n in (3, 4), b.n in (3, 4)
    if not ar_a and not ar_b:
        fa, fb = hypgeom.orbifold_volume_f(a.n, prec), hypgeom.orbifold_volume_f(b.n, prec)
        if fa == fb:
            raise ArithmeticError("minimal orbifold volumes coincide")
        return CommensurabilityResult(False, "non-arithmetic",
                                      f"minimal orbifold volumes differ: f({a.n}) = {mpmath.nstr(fa, 15)}, "
                                      f"f({b.n}) = {mpmath.nstr(fb, 15)}")
    if ar_a and ar_b:
        pa, pb = build_trace_field(a.n).min_poly, build_trace_field(b.n).min_poly
        return CommensurabilityResult(False, "arithmetic",
                                      f"different invariant trace fields ({pa} vs {pb})")
    return CommensurabilityResult(False, "mixed", "one is arithmetic and the other is not")


# symmetries


@dataclass(frozen=True)
class SymmetryData:
    kind: str
    n: int
    sym_plus_order: object
    sym_order: object
    hidden_count: object
    cover_degree: object
    orbifold_volume_orientable: object
    orbifold_volume: object
    notes: tuple = field(default_factory=tuple)

    def to_json(self, digits=30):
        def num(x):
            return mpmath.nstr(x, digits) if isinstance(x, mpmath.mpf) else x

        return {
            "kind": self.kind,
            "n": self.n,
            "sym_plus_order": self.sym_plus_order,
            "sym_order": self.sym_order,
            "hidden_count": self.hidden_count,
            "cover_degree": self.cover_degree,
            "orbifold_volume_orientable": num(self.orbifold_volume_orientable),
            "orbifold_volume": num(self.orbifold_volume),
            "notes": list(self.notes),
        }


def symmetry_data(m, prec=hypgeom.DEFAULT_PREC):
    n = m.n
    if not (m.is_untwisted or m.is_prime_family):
        return SymmetryData(m.kind, n, UNKNOWN, UNKNOWN, UNKNOWN, UNKNOWN, UNKNOWN, UNKNOWN,
                            ("symmetry groups are only determined for the all-zero and (0,1,...,1) twist vectors",))
    if n in (3, 4):
        return SymmetryData(m.kind, n, UNKNOWN, UNKNOWN, INFINITE, None, None, None,
                            ("arithmetic: infinitely many hidden symmetries, no minimal orbifold",))
    f = hypgeom.orbifold_volume_f(n, prec)
    with mpmath.workprec(prec):
        half = f / 2
    if m.is_untwisted:
        notes = ()
        if n == 6:
            notes = (f"Sym+(M_6) of order {SNAPPY_SYM6[0]} and Sym(M_6) of order {SNAPPY_SYM6[1]} "
                     "as computed with SnapPy",)
        return SymmetryData(m.kind, n, 8 * n, 16 * n, 0, 16 * n, f, half, notes)
    # M'_n: three commuting order-two symmetries; covers the same minimal orbifold
    sym = 8
    hidden = 16 * n // sym
    if sym * hidden != 16 * n:
        raise ArithmeticError("cover degree does not factor as |Sym| * hidden")
    return SymmetryData(m.kind, n, None, sym, hidden, 16 * n, f, half,
                        ("Sym(M'_n) is (Z/2)^3; orientation-preserving subgroup not separated",))


@dataclass(frozen=True)
class HiddenSymmetryBounds:
    n: int
    epsilon: mpmath.mpf
    lower: mpmath.mpf
    upper: mpmath.mpf
    hidden: int
    contains_hidden: bool
    n0: int
    prec: int

    @property
    def premise_holds(self):
        return self.n >= self.n0


def _bracket_holds(n, eps, lob, prec):
    # 2n lies in [n f/(L+eps), n f/(L-eps)]  <=>  2(L - eps) <= f(n) <= 2(L + eps)
    f = hypgeom.orbifold_volume_f(n, prec)
    with mpmath.workprec(prec):
        return 2 * (lob - eps) <= f <= 2 * (lob + eps)


def smallest_bracket_n(epsilon, prec=hypgeom.DEFAULT_PREC):
    """Least ``n >= 5`` whose bracket contains ``2n``; by monotonicity of ``f`` it holds for all larger ``n``."""
    with mpmath.workprec(prec):
        eps = mpmath.mpf(epsilon)
        lob = hypgeom.lobachevsky(mpmath.pi / 4, prec)
    lo, hi = 4, 5
    while not _bracket_holds(hi, eps, lob, prec):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _bracket_holds(mid, eps, lob, prec):
            hi = mid
        else:
            lo = mid
    return hi


def hidden_symmetry_bounds(n, epsilon, prec=hypgeom.DEFAULT_PREC):
    """Volume bracket ``vol / 8(L(pi/4) + eps) <= HS_n <= vol / 8(L(pi/4) - eps)`` for ``M'_n``."""
    _check_n(n)
    if n < 5:
        raise ValueError("hidden-symmetry bounds need n >= 5")
    with mpmath.workprec(prec):
        eps = mpmath.mpf(epsilon)
        lob = hypgeom.lobachevsky(mpmath.pi / 4, prec)
        if not (0 < eps < lob):
            raise ValueError(f"epsilon must lie in (0, L(pi/4)), got {epsilon}")
        vol = hypgeom.volume(n, prec)
        lower = vol / (8 * (lob + eps))
        upper = vol / (8 * (lob - eps))
        inside = lower <= 2 * n <= upper
    return HiddenSymmetryBounds(n, eps, lower, upper, 2 * n, bool(inside), smallest_bracket_n(eps, prec), prec)


def max_hidden_symmetries(volume, v0=None, prec=hypgeom.DEFAULT_PREC):
    """Upper bound ``volume / v0`` on hidden symmetries; ``v0`` has no default and must be supplied."""
    if v0 is None:
        raise MissingDataError("v0 (least volume of a one-cusped orbifold) has no built-in value; supply it")
    with mpmath.workprec(prec):
        v0 = mpmath.mpf(v0)
        if v0 <= 0:
            raise ValueError("v0 must be positive")
        return mpmath.mpf(volume) / v0


# combined report


@dataclass(frozen=True)
class ClassificationReport:
    manifold: PretzelFal
    verdict: ArithmeticityVerdict
    commensurability_key: str
    symmetry: SymmetryData
    volume: mpmath.mpf
    f: mpmath.mpf
    prec: int


def classify(m, nr_table=None, prec=hypgeom.DEFAULT_PREC):
    return ClassificationReport(
        m,
        is_arithmetic(m.n, nr_table, prec),
        commensurability_key(m),
        symmetry_data(m, prec),
        hypgeom.volume(m.n, prec),
        hypgeom.orbifold_volume_f(m.n, prec),
        prec,
    )
