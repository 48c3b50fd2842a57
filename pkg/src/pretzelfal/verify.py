"""Release checks.  Each check returns a :class:`CheckResult`; the CLI and the test-suite share them."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import hypgeom, oracles
from .classify import PretzelFal, hidden_symmetry_bounds, smallest_bracket_n, symmetry_data
from .crushtacean import build_pretzel_crushtacean, cdw_criterion, find_involutions
from .exactfield import RatPolynomial
from .numtheory import euler_totient
from .tracefield import build_trace_field, fields_equal, fields_equal_numeric

PREC = hypgeom.DEFAULT_PREC
NR_SHORT = mpmath.mpf("0.862554627")
NR_LONG = mpmath.mpf("1.9248473002")


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(number, name):
    def deco(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                ok, detail = fn(*args, **kwargs)
            except Exception as exc:  # a crash is a failed check, not an aborted run
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            return CheckResult(number, name, bool(ok), detail, time.perf_counter() - t0)

        run.number, run.check_name = number, name
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return deco


@_timed(1, "quadratic fields")
def check_quadratic_fields():
    want = {3: [1, 0, 1], 4: [2, 0, 1], 6: [3, 0, 1]}
    got = {n: build_trace_field(n).min_poly for n in want}
    ok = all(got[n] == RatPolynomial(c) for n, c in want.items())
    return ok, ", ".join(f"n={n}: {got[n]}" for n in sorted(got))


@_timed(2, "degree law")
def check_degree_law(max_n=150):
    bad = [n for n in range(3, max_n + 1) if build_trace_field(n).degree != euler_totient(n)]
    return not bad, f"degree = phi(n) for 3 <= n <= {max_n}" if not bad else f"mismatch at {bad}"


@_timed(3, "field distinctness")
def check_distinctness(max_n=150):
    equal_exact, disagree, pairs = [], [], 0
    for m in range(3, max_n + 1):
        for n in range(m + 1, max_n + 1):
            pairs += 1
            e = fields_equal(m, n)
            if e:
                equal_exact.append((m, n))
            if euler_totient(m) == euler_totient(n) and fields_equal_numeric(m, n) != e:
                disagree.append((m, n))
    ok = not equal_exact and not disagree
    return ok, f"{pairs} pairs, equal={equal_exact[:5]}, numeric disagreements={disagree[:5]}"


@_timed(4, "volume ratio")
def check_volume_ratio(prec=PREC):
    with mpmath.workprec(prec):
        ratio = hypgeom.volume(6, prec) / hypgeom.figure_eight_volume(prec)
        literal = hypgeom.volume(6, prec) / (6 * hypgeom.lobachevsky(mpmath.pi / 3, prec) * 2)
        ok = abs(ratio - 20) < mpmath.mpf("1e-20")
        return ok, (f"vol(M6)/(6 L(pi/3)) = {mpmath.nstr(ratio, 25)}; "
                    f"vol(M6)/(6 L(pi/3) 2) = {mpmath.nstr(literal, 25)}")


@_timed(5, "monotone limit")
def check_monotone_limit(max_n=10 ** 4, prec=PREC):
    prev, bad = None, []
    for n in range(3, max_n + 1):
        f = hypgeom.orbifold_volume_f(n, prec)
        if prev is not None and not f > prev:
            bad.append(n)
        prev = f
    with mpmath.workprec(prec):
        two_l = 2 * hypgeom.lobachevsky(mpmath.pi / 4, prec)
        gap = abs(hypgeom.orbifold_volume_f(10 ** 6, prec) - two_l)
    # the reference value 0.915965 is truncated, not rounded (0.91596559...)
    shown = mpmath.nstr(two_l, 20)[:8]
    ok = not bad and gap < mpmath.mpf("1e-9") and shown == "0.915965"
    return ok, f"increasing to n={max_n}: {not bad}; |f(1e6) - 2L(pi/4)| = {mpmath.nstr(gap, 3)}; 2L(pi/4) ~ {shown}"


@_timed(6, "Vinberg witness")
def check_vinberg():
    entry = hypgeom.gram_entry_exact(6)
    integral, witness = hypgeom.vinberg_entry_is_integral(6)
    ok = isinstance(entry, Fraction) and entry == Fraction(-10, 3) and not integral
    return ok, f"Gram entry {entry}, minimal polynomial {witness}, integral={integral}"


@_timed(7, "geodesic thresholds")
def check_geodesic_thresholds(prec=PREC):
    l15, l14, l7 = (hypgeom.geodesic_data(n, prec).closed_length for n in (15, 14, 7))
    with mpmath.workprec(prec):
        # closed form evaluated twice at different precisions; the gap bounds the evaluation error
        err = max(abs(hypgeom.geodesic_data(n, prec + 64).closed_length - x) for n, x in ((15, l15), (14, l14), (7, l7)))
        ok = l15 < NR_SHORT < l14 and l7 < NR_LONG and err < mpmath.mpf("1e-30")
    return ok, (f"l(15)={mpmath.nstr(l15, 12)} < 0.862554627 < l(14)={mpmath.nstr(l14, 12)}; "
                f"l(7)={mpmath.nstr(l7, 12)} < 1.9248473002")


@_timed(8, "crushtacean criterion")
def check_crushtacean(exhaustive_max=10, random_max=30, samples=1000, oracle_graphs=60, seed=20240607):
    rng = random.Random(seed)
    failures = []
    for n in range(3, exhaustive_max + 1):
        g = build_pretzel_crushtacean(n)
        for eps in oracles.all_twist_vectors(n):
            if not cdw_criterion(g, eps):
                failures.append((n, eps))
    for n in range(3, random_max + 1):
        g = build_pretzel_crushtacean(n)
        for _ in range(samples):
            eps = [rng.randint(0, 1) for _ in range(n)]
            if not cdw_criterion(g, eps):
                failures.append((n, tuple(eps)))
    disagreements, edges_checked = [], 0
    for _ in range(oracle_graphs):
        g = oracles.random_embedded_graph(rng, rng.choice((4, 6, 8, 10)), 0.5)
        for e in g.green_edges():
            edges_checked += 1
            r = find_involutions(g, e)
            if (r.has_reflective, r.has_rotational) != oracles.involutions_bruteforce(g, e):
                disagreements.append((g.to_json(), e))
    for n in range(3, 6):
        g = build_pretzel_crushtacean(n)
        for e in g.green_edges():
            edges_checked += 1
            r = find_involutions(g, e)
            if (r.has_reflective, r.has_rotational) != oracles.involutions_bruteforce(g, e):
                disagreements.append((n, e))
    ok = not failures and not disagreements
    return ok, (f"criterion failures={len(failures)}; oracle disagreements={len(disagreements)} "
                f"over {edges_checked} green edges")


@_timed(9, "hidden-symmetry accounting")
def check_hidden_symmetries(max_n=150, epsilon="0.01"):
    bad = []
    for n in range(5, max_n + 1):
        a = symmetry_data(PretzelFal(n))
        b = symmetry_data(PretzelFal(n, (0,) + (1,) * (n - 1)))
        if (a.sym_plus_order, a.sym_order, a.hidden_count) != (8 * n, 16 * n, 0):
            bad.append(("M", n))
        if (b.sym_plus_order, b.sym_order, b.hidden_count) != (None, 8, 2 * n) or 16 * n != b.sym_order * b.hidden_count:
            bad.append(("M'", n))
    n0_lo, n0_hi = smallest_bracket_n(epsilon, 128), smallest_bracket_n(epsilon, 256)
    outside = [n for n in list(range(max(n0_hi, 5), max_n + 1)) + [10 ** 3, 10 ** 4, 10 ** 6]
               if not hidden_symmetry_bounds(n, epsilon).contains_hidden]
    below = [n for n in range(5, n0_hi) if hidden_symmetry_bounds(n, epsilon).contains_hidden]
    ok = not bad and not outside and not below and n0_lo == n0_hi
    return ok, f"orders ok for 5..{max_n}: {not bad}; n0(eps={epsilon}) = {n0_hi} at 256 bits, {n0_lo} at 128 bits"


@_timed(10, "Lobachevsky properties")
def check_lobachevsky(prec=PREC, samples=20, oracle_angles=5, seed=7):
    rng = random.Random(seed)
    L = hypgeom.lobachevsky
    worst = mpmath.mpf(0)
    with mpmath.workprec(prec):
        tol = mpmath.mpf("1e-30")
        pi = mpmath.pi
        for _ in range(samples):
            t = mpmath.mpf(rng.uniform(-10, 10))
            res = (
                abs(L(-t, prec) + L(t, prec)),
                abs(L(t + pi, prec) - L(t, prec)),
                abs(L(2 * t, prec) - 2 * L(t, prec) - 2 * L(t + pi / 2, prec)),
            )
            worst = max(worst, *res)
        oracle_gap = mpmath.mpf(0)
        for _ in range(oracle_angles):
            t = mpmath.mpf(rng.uniform(0.05, 3.0))
            oracle_gap = max(oracle_gap, abs(L(t, prec) - oracles.lobachevsky_quadrature(t, prec)))
        ok = worst < tol and oracle_gap < mpmath.mpf("1e-20") and L(0, prec) == 0
    return ok, f"worst identity residual {mpmath.nstr(worst, 3)}; quadrature gap {mpmath.nstr(oracle_gap, 3)}"


CHECKS = (
    check_quadratic_fields,
    check_degree_law,
    check_distinctness,
    check_volume_ratio,
    check_monotone_limit,
    check_vinberg,
    check_geodesic_thresholds,
    check_crushtacean,
    check_hidden_symmetries,
    check_lobachevsky,
)

SUITES = {
    "fields": (1, 2, 3),
    "geometry": (4, 5, 6, 7, 10),
    "graphs": (8,),
    "symmetry": (9,),
}
SUITES["all"] = tuple(sorted(sum(SUITES.values(), ())))


def run_suite(name="all", progress=None):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    out = []
    for check in CHECKS:
        if check.number in SUITES[name]:
            res = check()
            out.append(res)
            if progress is not None:
                progress(res)
    return out
