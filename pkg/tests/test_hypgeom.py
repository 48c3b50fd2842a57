from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pretzelfal import hypgeom, oracles
from pretzelfal.exactfield import RatPolynomial, minimal_polynomial
from pretzelfal.hypgeom import (
    cusp_shape,
    geodesic_data,
    gram_entry_exact,
    lobachevsky,
    orbifold_volume_f,
    orbifold_volume_f_prime,
    packing_radii,
    tile_shape,
    vinberg_entry_is_integral,
    volume,
)

TOL30 = mpmath.mpf("1e-30")
angles = st.floats(min_value=-20, max_value=20, allow_nan=False, allow_infinity=False)


def test_lobachevsky_zero_and_reference():
    assert lobachevsky(0) == 0
    with mpmath.workprec(256):
        assert mpmath.nstr(2 * lobachevsky(mpmath.pi / 4), 20).startswith("0.915965")


def test_precision_floor():
    with pytest.raises(ValueError):
        lobachevsky(0.3, prec=16)


@given(angles)
def test_lobachevsky_odd_and_periodic(t):
    with mpmath.workprec(256):
        t = mpmath.mpf(t)
        assert abs(lobachevsky(-t) + lobachevsky(t)) < TOL30
        assert abs(lobachevsky(t + mpmath.pi) - lobachevsky(t)) < TOL30


@given(angles)
def test_duplication_identity(t):
    with mpmath.workprec(256):
        t = mpmath.mpf(t)
        res = lobachevsky(2 * t) - 2 * lobachevsky(t) - 2 * lobachevsky(t + mpmath.pi / 2)
        assert abs(res) < TOL30


def test_duplication_at_point_three():
    with mpmath.workprec(256):
        t = mpmath.mpf("0.3")
        assert abs(lobachevsky(2 * t) - 2 * lobachevsky(t) - 2 * lobachevsky(t + mpmath.pi / 2)) < TOL30


@pytest.mark.parametrize("t", ["0.1", "0.7853981633974483", "1.3", "2.2", "4.0"])
def test_lobachevsky_against_both_oracles(t):
    with mpmath.workprec(256):
        v = lobachevsky(mpmath.mpf(t))
        assert abs(v - oracles.lobachevsky_quadrature(t)) < mpmath.mpf("1e-20")
        assert abs(v - oracles.lobachevsky_clausen(t)) < TOL30


def test_lobachevsky_low_precision_consistent():
    hi = lobachevsky(1.1, 512)
    for prec in (32, 53, 100, 256):
        with mpmath.workprec(prec):
            assert abs(lobachevsky(1.1, prec) - hi) < mpmath.mpf(2) ** (-(prec - 2))


def test_volume_m6():
    with mpmath.workprec(256):
        v = volume(6)
        assert abs(v / hypgeom.figure_eight_volume() - 20) < mpmath.mpf("1e-20")
        assert abs(v - 120 * lobachevsky(mpmath.pi / 3)) < TOL30
        assert mpmath.nstr(v, 6) == "40.5977"


def test_octahedron_volume():
    with mpmath.workprec(256):
        assert abs(hypgeom.octahedron_volume() - 4 * 2 * lobachevsky(mpmath.pi / 4)) < TOL30
        assert mpmath.nstr(hypgeom.octahedron_volume(), 8) == "3.6638624"


def test_f_increasing_and_below_limit():
    with mpmath.workprec(256):
        limit = 2 * lobachevsky(mpmath.pi / 4)
        prev = None
        for n in range(3, 400):
            f = orbifold_volume_f(n)
            assert f < limit
            assert prev is None or f > prev
            prev = f
        assert abs(orbifold_volume_f(10 ** 6) - limit) < mpmath.mpf("1e-10")


@pytest.mark.parametrize("n", [4, 5, 10, 57, 1000])
def test_f_prime_positive_and_matches_difference(n):
    with mpmath.workprec(256):
        d = orbifold_volume_f_prime(n)
        assert d > 0
        h = mpmath.mpf("1e-25")
        num = (orbifold_volume_f(n + h) - orbifold_volume_f(n - h)) / (2 * h)
        assert abs(num - d) < mpmath.mpf("1e-20") * (1 + abs(d))


def test_volume_rejects_small_n():
    with pytest.raises(ValueError):
        volume(2)


def test_packing_radii():
    p6 = packing_radii(6)
    with mpmath.workprec(256):
        assert abs(p6.white_outer - 3) < TOL30 and abs(p6.white_inner - 1) < TOL30
        p4 = packing_radii(4)
        assert abs(1 / (2 * p4.shaded_small) + 1 / (2 * p4.shaded_large) - mpmath.sqrt(2)) < TOL30
        # r = sec t - tan t = tan(pi/4 - t/2): increases towards 1, R decreases towards 1
        prev = None
        for n in range(3, 200):
            p = packing_radii(n)
            th = mpmath.pi / n
            assert p.shaded_small > 0 and p.white_inner > 0 and p.unit_circle_count == n
            assert abs(p.shaded_small - mpmath.tan(mpmath.pi / 4 - th / 2)) < TOL30
            assert abs(p.shaded_small * p.shaded_large - 1) < TOL30
            assert prev is None or (p.shaded_small > prev[0] and p.shaded_large < prev[1])
            prev = (p.shaded_small, p.shaded_large)
        far = packing_radii(10 ** 6)
        assert abs(far.shaded_small - 1) < mpmath.mpf("1e-5") and abs(far.shaded_large - 1) < mpmath.mpf("1e-5")


def test_tile_shape():
    with mpmath.workprec(256):
        assert abs(tile_shape(4) - mpmath.mpc(0, mpmath.sqrt(2))) < TOL30
        assert abs(tile_shape(3) - 2j) < TOL30
        for n in range(3, 50):
            z = tile_shape(n)
            assert z.real == 0 and z.imag > 1


def test_cusp_shapes_examples():
    with mpmath.workprec(256):
        assert abs(cusp_shape(3).numeric - 1j) < TOL30
        assert abs(cusp_shape(4).numeric - mpmath.mpc(0, mpmath.sqrt(2))) < TOL30
        c = mpmath.cos(mpmath.pi / 5)
        want = 2j * c / (1 + 1j * c)
        assert abs(cusp_shape(5, "twisted+").numeric - want) < TOL30
    assert str(minimal_polynomial(cusp_shape(3).exact)) == "x^2+1"
    with pytest.raises(ValueError):
        cusp_shape(5, "sideways")


def test_knot_circle_bounds():
    kc = cusp_shape(9, "knot-circle")
    assert kc.meridian == 2 and kc.longitude_lower_bound == 18 and kc.exact is None


@pytest.mark.parametrize("kind", ["untwisted", "twisted+", "twisted-"])
def test_exact_and_numeric_cusp_shapes_agree(kind):
    for n in list(range(3, 30)) + [97, 150]:
        cs = cusp_shape(n, kind)
        with mpmath.workprec(256):
            assert abs(cs.exact.evaluate(1, 256) - cs.numeric) < TOL30
            if kind == "untwisted":
                assert cs.numeric.real == 0


def test_geodesic_examples():
    g6 = geodesic_data(6)
    with mpmath.workprec(256):
        assert abs(g6.perpendicular_length - mpmath.log(3)) < TOL30
        assert abs(g6.closed_length - 2 * g6.perpendicular_length) < TOL30
    assert g6.gram_entry == Fraction(-10, 3) == oracles.gram_entry_fraction(6)
    assert gram_entry_exact(4) == -6 == oracles.gram_entry_fraction(4)
    assert gram_entry_exact(3) == -14 == oracles.gram_entry_fraction(3)
    assert geodesic_data(15).closed_length < mpmath.mpf("0.862554627") < geodesic_data(14).closed_length
    assert geodesic_data(7).closed_length < mpmath.mpf("1.9248473002")


def test_geodesic_length_decreasing():
    for n in (3, 15, 200):
        assert geodesic_data(n).closed_length == hypgeom.closed_geodesic_length(n)
    prev = None
    for n in range(3, 1001):
        ell = hypgeom.closed_geodesic_length(n)
        assert prev is None or ell < prev
        prev = ell


def test_gram_entry_exact_matches_numeric():
    for n in range(3, 151):
        g = geodesic_data(n)
        exact = g.gram_entry
        with mpmath.workprec(256):
            val = mpmath.mpf(exact.numerator) / exact.denominator if isinstance(exact, Fraction) \
                else exact.evaluate(1, 256).real
            assert abs(val - g.gram_numeric) < TOL30


def test_vinberg():
    ok6, w6 = vinberg_entry_is_integral(6)
    assert not ok6 and w6 == RatPolynomial([Fraction(10, 3), 1])
    assert vinberg_entry_is_integral(4) == (True, RatPolynomial([6, 1]))
    assert vinberg_entry_is_integral(3) == (True, RatPolynomial([14, 1]))
