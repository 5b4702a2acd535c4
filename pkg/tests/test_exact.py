import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from runge_kit.exact import (
    InexactDivision,
    IntInterval,
    Poly,
    discriminant,
    int_nth_root,
    integer_roots,
    interpolate,
    max_power_exponent,
    perfect_power_test,
    poly_gcd,
    power_exponents,
    rational_roots,
    real_root_hull,
    resultant,
    squarefree_decomposition,
)

x = sp.Symbol("x")
small = st.integers(-30, 30)
coeff_lists = st.lists(small, min_size=1, max_size=7).filter(lambda c: c[-1] != 0)


def to_sympy(f: Poly):
    return sp.Poly(list(reversed([sp.Rational(c) for c in f.coeffs])), x, domain="QQ")


@given(st.integers(0, 10**40), st.integers(1, 9))
def test_int_nth_root_floor(v, n):
    r, exact = int_nth_root(v, n)
    assert r**n <= v < (r + 1) ** n
    assert exact == (r**n == v)


@given(st.integers(-10**6, 10**6), st.integers(2, 7))
def test_perfect_power_roundtrip(y, m):
    v = y**m
    r = perfect_power_test(v, m)
    assert r is not None and r**m == v
    if v > 1:
        assert perfect_power_test(v + 1, m) is None or (v + 1) == r**m


def test_perfect_power_negative_even():
    assert perfect_power_test(-8, 3) == -2
    assert perfect_power_test(-4, 2) is None
    with pytest.raises(ValueError):
        perfect_power_test(4, 1)


def test_power_exponents():
    assert power_exponents(2**12, 12) == [(2, 64), (3, 16), (4, 8), (6, 4), (12, 2)]
    assert power_exponents(-27, 5) == [(3, -3)]
    assert max_power_exponent(3**10 * 5**5) == 5
    for v in (-1, 0, 1):
        with pytest.raises(ValueError):
            power_exponents(v, 4)


@given(coeff_lists, coeff_lists)
def test_ring_ops_match_sympy(a, b):
    f, g = Poly(a), Poly(b)
    assert to_sympy(f * g) == to_sympy(f) * to_sympy(g)
    assert to_sympy(f - g) == to_sympy(f) - to_sympy(g)
    q, r = f.divmod(g)
    sq, sr = sp.div(to_sympy(f), to_sympy(g))
    assert to_sympy(q) == sq and to_sympy(r) == sr


def sylvester_det(f: Poly, g: Poly):
    # sympy.resultant mis-signs some inputs (x+1, x^3); the determinant is the definition
    a, b = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    n, m = len(a) - 1, len(b) - 1
    rows = [[0] * i + a + [0] * (m - 1 - i) for i in range(m)]
    rows += [[0] * i + b + [0] * (n - 1 - i) for i in range(n)]
    return sp.Matrix(rows).det()


@given(coeff_lists, coeff_lists)
@settings(max_examples=60)
def test_gcd_resultant_match_sympy(a, b):
    f, g = Poly(a), Poly(b)
    G = poly_gcd(f, g)
    if f.degree >= 1 and g.degree >= 1:
        assert to_sympy(G).monic() == sp.gcd(to_sympy(f), to_sympy(g)).monic()
        assert resultant(f, g) == sylvester_det(f, g)


@given(coeff_lists.filter(lambda c: len(c) >= 2))
@settings(max_examples=60)
def test_discriminant_matches_sympy(a):
    f = Poly(a)
    assert discriminant(f) == sp.discriminant(to_sympy(f))


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5), st.integers(1, 4))
def test_squarefree_decomposition_rebuilds(roots, lead):
    f = Poly.from_roots(roots) * lead
    c, parts = squarefree_decomposition(f)
    prod = Poly([c])
    for p, k in parts:
        prod = prod * p**k
        assert discriminant(p) != 0 or p.degree == 1
    assert prod == f


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6), st.integers(1, 5))
def test_integer_roots_with_multiplicity(roots, extra):
    f = Poly.from_roots(roots) * Poly([extra, 0, 1])  # x^2 + extra has no integer root
    want = sorted((r, roots.count(r)) for r in set(roots))
    assert integer_roots(f) == want


def test_rational_roots():
    f = Poly([-1, 0, 9]) * Poly([7, 3])  # (9x^2-1)(3x+7)
    assert rational_roots(f) == [(Fraction(-7, 3), 1), (Fraction(-1, 3), 1), (Fraction(1, 3), 1)]


@given(st.lists(st.integers(-200, 200), min_size=1, max_size=5))
def test_real_root_hull_integer_roots(roots):
    f = Poly.from_roots(roots) * Poly([1, 0, 1])
    assert real_root_hull(f) == IntInterval(min(roots), max(roots))


def test_real_root_hull_irrational_and_empty():
    assert real_root_hull(Poly([-2, 0, 1])) == IntInterval(-2, 2)
    assert real_root_hull(Poly([1, 0, 1])).is_empty


def test_exact_div_and_shift():
    f = Poly.from_roots([1, 2, 3])
    assert f.exact_div(Poly.from_roots([2])) == Poly.from_roots([1, 3])
    with pytest.raises(InexactDivision):
        f.exact_div(Poly([5, 1]))
    assert f.shift(1) == Poly.from_roots([0, 1, 2])
    assert f.reflect(0)(5) == f(-5)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6, unique=True))
def test_interpolate_recovers(xs):
    f = Poly([3, Fraction(1, 2), -1, 2])
    g = interpolate([(t, f(t)) for t in xs + [99, 100, 101, 102]])
    assert g == f


def test_interval_ops():
    a, b = IntInterval(-3, 4), IntInterval(6, 9)
    assert len(a.hull(b)) == 13
    assert a.intersect(b).is_empty
    assert list(IntInterval(1, 3)) == [1, 2, 3]
    assert math.prod(IntInterval(1, 5)) == 120
