import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from runge_kit.exact import Poly
from runge_kit.family import enumerate_tuples, g_poly
from runge_kit.runge import (
    RungeInapplicable,
    batch_solve,
    brute_force_solutions,
    offset_poly,
    root_poly_part,
    runge_solve,
)

X = Poly.x()


def naive(f: Poly, m: int, lo: int, hi: int) -> set:
    out = set()
    for x in range(lo, hi + 1):
        v = f(x)
        if v < 0 and m % 2 == 0:
            continue
        r = round(abs(v) ** (1 / m)) if v else 0
        for c in (r - 1, r, r + 1):
            for y in {c, -c}:
                if y**m == v:
                    out.add((x, y))
    return out


monic = st.integers(1, 3).flatmap(
    lambda k: st.lists(st.integers(-40, 40), min_size=2 * k, max_size=2 * k).map(lambda c: Poly(c + [1]))
)


@given(monic)
@settings(max_examples=40)
def test_root_part_defect(f):
    rp = root_poly_part(f, 2)
    assert rp.Q.is_monic() and (rp.Q * rp.D).is_integral()
    defect = f - rp.Q**2
    assert defect.is_zero() or defect.degree < f.degree - rp.Q.degree


@given(monic)
@settings(max_examples=40, deadline=None)
def test_runge_is_complete_for_random_squares(f):
    rep = runge_solve(2, f)
    if rep.parametric:  # f is a square: infinitely many solutions
        return
    lo = min([-50] + [I.lo for I in (rep.final.I1, rep.final.I2) if not I.is_empty])
    hi = max([50] + [I.hi for I in (rep.final.I1, rep.final.I2) if not I.is_empty])
    offset_roots = {p for p in rep.pairs if not lo <= p[0] <= hi}
    assert {p for p in rep.pairs if lo <= p[0] <= hi} == naive(f, 2, lo, hi)
    for x, y in offset_roots:
        assert y * y == f(x)


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(2, 40))
@settings(max_examples=40, deadline=None)
def test_planted_solutions_found(a, b, c):
    # (x^2 + a x + b)^2 + c has the solution x whenever c is the right square difference;
    # plant a point: f = (x^2+ax+b)^2 + (c^2 - (x0^2+a x0+b)^2) evaluated at x0 = 7 is c^2
    base = X * X + a * X + b
    x0 = 7
    f = base * base + (c * c - base(x0) ** 2)
    if f == base * base:
        return
    assert (x0, c) in runge_solve(2, f).pairs


def test_cubic_exponent():
    f = X**3 + 3 * X**2 + 3 * X + 9  # (x+1)^3 + 8
    pairs = runge_solve(3, f).pairs
    assert pairs == naive(f, 3, -200, 200)
    assert (-1, 2) in pairs


def test_composite_exponent_via_gcd():
    # m = 4 on a sextic: e = gcd(4, 6) = 2, squares then filtered to 4th powers
    f = g_poly(5, (0, 1))
    assert runge_solve(4, f).pairs == naive(f, 4, -300, 300)


def test_inapplicable():
    with pytest.raises(RungeInapplicable, match=r"gcd\(m, deg\)=1"):
        runge_solve(3, g_poly(3, (0, 1)))
    with pytest.raises(RungeInapplicable):
        runge_solve(2, 2 * X**2 + 1)


def test_parametric_flag():
    f = (X * X + 1) ** 2
    rep = runge_solve(2, f)
    assert rep.parametric and rep.notes


def test_offset_poly_definition():
    f = g_poly(5, (1, 3))
    rp = root_poly_part(f, 2)
    k = 5
    assert offset_poly(f, rp, k) == f * rp.D**2 - (rp.Q * rp.D + k) ** 2


def test_explicit_k_matches_schedule():
    f = g_poly(7, (0, 2, 5))
    a = runge_solve(2, f)
    b = runge_solve(2, f, k1=3, k2=9)
    c = runge_solve(2, f, reduce=False)
    assert a.pairs == b.pairs == c.pairs


def test_reduction_does_not_grow_count():
    for T in [(0,), (2, 3), (1, 2, 4, 6)]:
        rep = runge_solve(2, g_poly(7, T))
        assert rep.final.subequation_count <= rep.initial.subequation_count


def test_brute_force_oracle_agrees_with_naive():
    f = g_poly(5, (0, 4))
    assert brute_force_solutions(f, 2, -2000, 2000) == naive(f, 2, -2000, 2000)


def test_batch_order_and_jobs():
    one = [r.to_dict() for r in batch_solve(2, 3, jobs=1)]
    many = [r.to_dict() for r in batch_solve(2, 3, jobs=4)]
    assert one == many
    assert [tuple(d["T"]) for d in one] == list(enumerate_tuples(3))


def test_report_to_dict_is_stringly():
    d = runge_solve(2, g_poly(5, (0, 2)), (5, (0, 2))).to_dict()
    assert "wall_time" not in d
    assert all(isinstance(s["x"], str) for s in d["solutions"])
    assert d["root_part"]["D"] == str(root_poly_part(g_poly(5, (0, 2)), 2).D)
    assert Fraction(d["root_part"]["Q"][0]) == root_poly_part(g_poly(5, (0, 2)), 2).Q[0]


def test_every_report_solution_checks():
    for T in enumerate_tuples(5):
        f = g_poly(5, T)
        for x, y in runge_solve(2, f).pairs:
            assert y * y == f(x)
            assert math.isqrt(f(x)) == abs(y)
