"""Release gate: one test per acceptance criterion, each at its stated tolerance and time bound.

A pass/fail line per criterion is printed in the terminal summary.
"""

import time

import mpmath
import pytest

from conftest import ACCEPTANCE_LINES
from pretzelfal import hypgeom, verify

# wall-clock bounds in seconds, where a criterion states one
TIME_LIMITS = {1: 1.0, 2: 300.0, 3: 600.0}
SUITE_LIMIT = 30 * 60

_elapsed = []


def _run(check):
    res = check()
    _elapsed.append(res.seconds)
    ACCEPTANCE_LINES.append((res.number, res.line()))
    print(res.line())
    return res


@pytest.mark.parametrize("check", verify.CHECKS, ids=lambda c: f"criterion_{c.number:02d}_{c.__name__[6:]}")
def test_criterion(check):
    res = _run(check)
    assert res.passed, res.detail
    limit = TIME_LIMITS.get(res.number)
    if limit is not None:
        assert res.seconds < limit, f"took {res.seconds:.1f}s, bound {limit}s"


def test_quadratic_fields_cold_timing():
    # criterion 1 bound measured without any warm cache
    verify.build_trace_field.cache_clear()
    t0 = time.perf_counter()
    res = verify.check_quadratic_fields()
    assert res.passed and time.perf_counter() - t0 < 1.0


@pytest.mark.xfail(strict=True, reason="literal expression includes an extra factor 2 and evaluates to 10; see README")
def test_criterion_04_literal_expression():
    with mpmath.workprec(256):
        value = hypgeom.volume(6, 256) / (6 * hypgeom.lobachevsky(mpmath.pi / 3, 256) * 2)
        ok = abs(value - 20) < mpmath.mpf("1e-20")
    line = f"[{'PASS' if ok else 'FAIL'}]  4 volume ratio (literal form): vol(M6)/(6 L(pi/3) 2) = {mpmath.nstr(value, 25)}"
    ACCEPTANCE_LINES.append((4.5, line))
    assert ok, line


def test_full_suite_time_budget():
    if len(_elapsed) != len(verify.CHECKS):
        pytest.skip("needs every criterion to have run in this session")
    assert sum(_elapsed) < SUITE_LIMIT
