import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from runge_kit.exact import Poly
from runge_kit.family import product_poly
from runge_kit.pell import (
    LAMBDA,
    POLY_A,
    POLY_B,
    U1,
    V1,
    ConicPell,
    PellError,
    PellStream,
    a_sequence,
    conic_solutions,
    cubic_sum_solution,
    fibonacci,
    fibonacci_family,
    lucas,
    lucas_fibonacci_stream,
    odd_m_family,
    p3_conic_family,
    p3_neighbor_solutions,
    poly_pell_uv,
    verify_congruences,
)

t = sp.Symbol("t")


def test_integer_stream_recurrence():
    s = PellStream(2, 1, (3, 2), (3, 2))
    got = s.take(4)
    assert got == [(17, 12), (99, 70), (577, 408), (3363, 2378)]
    assert s.cursor == 4 and s.current == (3363, 2378)


def test_stream_rejects_bad_seeds():
    with pytest.raises(PellError):
        PellStream(2, 1, (3, 1), (3, 2))
    with pytest.raises(PellError):
        PellStream(2, 1, (3, 2), (4, 3))
    with pytest.raises(ValueError):
        PellStream(2, 1, (1, 0), (1, 0))


@given(st.sampled_from([2, 3, 5, 6, 7, 10, 13]), st.integers(1, 6))
def test_stream_matches_sympy_fundamental(D, count):
    from sympy.solvers.diophantine.diophantine import diop_DN

    (X1, Z1), = [s for s in diop_DN(D, 1) if s[1]][:1]
    for X, Z in PellStream(D, 1, (X1, Z1), (X1, Z1)).take(count, include_seed=True):
        assert X * X - D * Z * Z == 1


def test_poly_pell_seed():
    assert U1 * U1 - POLY_A * V1 * V1 == 1
    U, V = poly_pell_uv(3)
    assert U * U - POLY_A * V * V == POLY_B


def test_poly_b_against_sympy():
    # the constant B is derived symbolically from the particular solution
    from runge_kit.pell import U0, V0

    def S(f):
        return sp.Poly(list(reversed(f.coeffs)), t).as_expr()

    B = sp.expand(S(U0) ** 2 - 3 * (108 * t**6 - 1) * S(V0) ** 2)
    assert sp.Poly(B, t).all_coeffs() == list(reversed(POLY_B.coeffs))
    assert sp.expand(B - 12 * (2916 * t**12 - 135 * t**6 + 1)) == 0


@pytest.mark.parametrize("n", range(6))
def test_cubic_sum_invariants(n):
    fam = cubic_sum_solution(n)
    assert fam.check() == []
    p2 = product_poly(2)
    assert fam.z**3 == p2.compose(fam.x) + p2.compose(fam.y)


def test_cubic_sum_numeric_specialization():
    fam = cubic_sum_solution(1)
    p2 = product_poly(2)
    for tv in range(-4, 5):
        x, y, z = fam.x(tv), fam.y(tv), fam.z(tv)
        assert p2(x) + p2(y) == z**3


def test_a_sequence_and_congruences():
    A = a_sequence(10)
    assert all(a % 4 == A[0] % 4 for a in A[::2])
    rep = verify_congruences(8)
    assert rep.ok, rep.failures
    assert any("factor 3" in note for note in rep.notes)


def test_lambda():
    assert LAMBDA == 6 * (27 * Poly.x() ** 6 - 1) * (108 * Poly.x() ** 6 - 1)


def test_conic_roundtrip():
    c = ConicPell(2, 41, 30, 1)
    assert (c.A, c.B) == (4 * 82, 60**2 - 4 * 82 * 2)
    for x in range(-5, 6):
        assert c.back(c.forward(x)) == x
    with pytest.raises(ValueError):
        conic_solutions(c, (1, 13), (163, 9), 3)


@pytest.mark.parametrize("ab", [(3, -1), (3, 7)])
def test_p3_conic_family(ab):
    a, b = ab
    p3 = product_poly(3)
    sols = p3_conic_family(a, b, 4)
    assert len(sols) == 4
    for x, z in sols:
        assert z * z == p3(x) + p3(a * x + b)


def test_p3_neighbors():
    sols = p3_neighbor_solutions(6)
    assert sols[:4] == [(-1, 0), (1, 12), (15, 408), (97, 13860)]
    p3 = product_poly(3)
    assert all(z * z == p3(x) + p3(x + 1) for x, z in sols)


def test_fibonacci_family():
    assert fibonacci_family(1) == (-20, 1800)
    assert fibonacci_family(2) == (-360, 579600)
    for n in range(1, 11):
        x, z = fibonacci_family(n)
        assert x == -5 * sp.fibonacci(6 * n) // 2 and z == 25 * sp.fibonacci(12 * n) // 2
    with pytest.raises(ValueError):
        fibonacci_family(0)


def test_lucas_stream():
    s = lucas_fibonacci_stream()
    for k, (L, F) in enumerate(s.take(5), 1):
        assert (L, F) == (lucas(2 + 6 * k), fibonacci(2 + 6 * k))
        assert L * L - 5 * F * F == 4
    assert lucas(10) == sp.lucas(10)


@given(st.sampled_from([3, 5, 7, 9, 11]), st.integers(-50, 50))
@settings(max_examples=50)
def test_odd_m_family(m, tv):
    x, y, z = odd_m_family(m, tv)
    assert z**m == x * (x + 1) + y * (y + 1)


def test_odd_m_rejects_even():
    with pytest.raises(ValueError):
        odd_m_family(4, 1)
