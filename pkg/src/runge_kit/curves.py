"""Discriminant curves of ``F_{a,b,i}(x) = p_i(x) + p_i(ax + b)`` and exact identity checks.

Bivariate discriminants are never formed symbolically: they are evaluated
at integer points and recovered by interpolation, one variable at a time.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterator

from .exact import Poly, discriminant, interpolate, perfect_power_test, rational_roots
from .family import CheckReport, g_poly, product_poly
from .parallel import ordered_map

X = Poly.x()


def height(r) -> int:
    r = Fraction(r)
    return max(abs(r.numerator), r.denominator)


@dataclass(frozen=True, order=True)
class RationalPoint:
    a: Fraction
    b: Fraction

    @property
    def height(self) -> int:
        return max(height(self.a), height(self.b))

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


def mixed_poly(i: int, a, b) -> Poly:
    if i not in (3, 4):
        raise ValueError("only i = 3 and i = 4 are supported")
    p = product_poly(i)
    return p + p.compose(Fraction(a) * X + Fraction(b))


def _disc(f: Poly) -> Fraction:
    """Discriminant, with 0 for polynomials of degree below 1 (including zero)."""
    if f.is_zero() or f.degree < 1:
        return Fraction(0)
    return Fraction(discriminant(f))


@dataclass(frozen=True)
class DiscInB:
    """``Disc_x F_{a,b,i}`` as a polynomial in ``b`` for fixed ``a``."""

    i: int
    a: Fraction
    poly: Poly | None
    x_degree: int
    degenerate: str | None = None


def _generic_x_degree(i: int, a: Fraction) -> int:
    return max(mixed_poly(i, a, b).degree for b in (Fraction(1, 7), Fraction(3, 11)))


def disc_in_b(i: int, a) -> DiscInB:
    """Interpolate the x-discriminant of ``F_{a,b,i}`` in ``b``.

    Sample points where ``F`` drops below its generic x-degree are skipped.
    The degree bound ``(2d - 2)(i + 1)`` covers every coefficient's growth in ``b``.
    """
    a = Fraction(a)
    d = _generic_x_degree(i, a)
    if d < 2:
        return DiscInB(i, a, None, d, "F has x-degree below 2 for generic b")
    need = (2 * d - 2) * (i + 1) + 1
    pts = []
    b = 0
    while len(pts) < need + 2:
        for bb in (b, -b - 1):
            f = mixed_poly(i, a, bb)
            if f.degree == d:
                pts.append((bb, _disc(f)))
        b += 1
    poly = interpolate(pts[:need])
    for bb, v in pts[need:]:
        if poly(bb) != v:
            raise ArithmeticError("discriminant interpolation is inconsistent")
    if poly.is_zero():
        return DiscInB(i, a, poly, d, "discriminant vanishes identically in b")
    return DiscInB(i, a, poly, d)


def _reduced_fractions(H: int) -> Iterator[Fraction]:
    for q in range(1, H + 1):
        for p in range(-H, H + 1):
            if math.gcd(p, q) == 1:
                yield Fraction(p, q)


def _points_for_a(args) -> list[RationalPoint]:
    i, a, H = args
    out = []
    if a == 0:
        return out
    d = disc_in_b(i, a)
    if d.poly is None or d.degenerate:
        return out
    for b, _ in rational_roots(d.poly):
        if height(b) <= H:
            out.append(RationalPoint(a, Fraction(b)))
    return out


def rational_point_search(i: int, H: int, jobs: int = 1) -> list[RationalPoint]:
    """All ``(a, b)`` with ``a != 0`` and heights at most ``H`` where ``F_{a,b,i}`` has a multiple root.

    ``a`` values whose ``F`` is degenerate in ``b`` are skipped; see :func:`degenerate_branches`.
    """
    if H < 1:
        raise ValueError("H must be positive")
    avals = sorted(set(_reduced_fractions(H)))
    found = [p for part in ordered_map(_points_for_a, [(i, a, H) for a in avals], jobs) for p in part]
    return sorted(set(found))


def degenerate_branches(i: int, H: int) -> list[DiscInB]:
    return [d for a in sorted(set(_reduced_fractions(H))) if (d := disc_in_b(i, a)).degenerate]


def involution(pt: RationalPoint) -> RationalPoint:
    """``(a, b) -> (1/a, -b/a)``, swapping the roles of ``x`` and ``ax + b``."""
    return RationalPoint(1 / pt.a, -pt.b / pt.a)


# -- the G1 factor ------------------------------------------------------------


def g1(a, b) -> Fraction:
    u, v = Fraction(a) + 1, Fraction(b) + 4
    return 24 * u**4 - 100 * u**3 * v + 105 * u**2 * v**2 - 40 * u * v**3 + 5 * v**4


def g1_in_b(a) -> Poly:
    u = Fraction(a) + 1
    v = X + 4
    return 24 * u**4 - 100 * u**3 * v + 105 * u**2 * v**2 - 40 * u * v**3 + 5 * v**4


def g1_check() -> CheckReport:
    """Divide the discriminant of ``F_{a,b,4}`` by the largest power of ``G_1`` and rebuild the cofactor.

    The cofactor's coefficients (in ``b``) are interpolated in ``a`` and checked at
    extra grid points, so the division holds as an identity in both variables.
    """
    rep = CheckReport("g1-divides-discriminant")
    # d = 5, coefficients of degree <= 5 in a: Disc has degree <= 8*5 in a
    need = 41
    grid = [a for a in range(-30, 30) if a != -1][: need + 4]
    discs, mults = [], []
    for a in grid:
        D = disc_in_b(4, a).poly
        g = g1_in_b(a)
        q, mult = D, 0
        while True:
            qq, r = q.divmod(g)
            if not r.is_zero():
                break
            q, mult = qq, mult + 1
        rep.checked += 1
        if mult == 0:
            rep.fail(a=a, check="G1 does not divide Disc in b")
        discs.append((D, g))
        mults.append(mult)
    # generic multiplicity; special a (e.g. a = 1) can pick up extra common factors
    mult = min(mults)
    quotients = [D.exact_div(g**mult) for D, g in discs]
    special = [a for a, k in zip(grid, mults) if k != mult]
    deg_b = max(q.degree for q in quotients)
    deg_a = 0
    for j in range(deg_b + 1):
        pts = [(a, q[j] if j <= q.degree else 0) for a, q in zip(grid, quotients)]
        c = interpolate(pts[:need])
        for a, v in pts[need:]:
            rep.checked += 1
            if c(a) != v:
                rep.fail(b_power=j, check="cofactor coefficient is not polynomial in a")
        if not c.is_zero():
            deg_a = max(deg_a, c.degree)
    rep.checked += 1
    if g1(-1, -4) != 0 or _disc(mixed_poly(4, -1, -4)) != 0:
        rep.fail(check="(a, b) = (-1, -4) is not a common zero")
    if special:
        rep.notes.append(f"G1 divides the cofactor again at a in {special}")
    rep.notes.append(f"G1 divides the discriminant exactly {mult} time(s)")
    rep.notes.append(f"cofactor degree in a: {deg_a}")
    rep.notes.append(f"cofactor degree in b: {deg_b}")
    rep.data["g1_multiplicity"] = mult
    rep.data["cofactor_degrees"] = [deg_a, deg_b]
    return rep


# -- fixed identities ---------------------------------------------------------


def _odd_product(k: int) -> int:
    return math.prod(2 * i + 1 for i in range(2 * k))


def identity_suite(k_max: int) -> CheckReport:
    """Exact checks of the product identities; the misprinted ``(x+1)^2`` form is expected to fail.

    Failures of the misprinted form are recorded in ``notes``, not ``failures``.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    rep = CheckReport("identities")
    p = product_poly

    def check(name: str, ok: bool, **info) -> None:
        rep.checked += 1
        if not ok:
            rep.fail(identity=name, **info)

    misprint_fails = []
    for k in range(1, k_max + 1):
        q = X**2 + (8 * k + 3) * X + 16 * k * k + 12 * k + 1
        check("p_{4k+3} + p_{4k-1} = p_{4k-1} q^2", p(4 * k + 3) + p(4 * k - 1) == p(4 * k - 1) * q**2, k=k)
        three = p(4 * k + 1) + p(4 * k) + p(4 * k - 1)
        check("p_{4k+1} + p_{4k} + p_{4k-1} = p_{4k-1} (x+4k+1)^2", three == p(4 * k - 1) * (X + 4 * k + 1) ** 2, k=k)
        if three != p(4 * k - 1) * (X + 1) ** 2:
            misprint_fails.append(k)
        h = Fraction(-(4 * k - 1), 2)
        odd = _odd_product(k)
        check("p_{4k-1}(-(4k-1)/2) = prod(2i+1)^2 / 4^{2k}", p(4 * k - 1)(h) == Fraction(odd * odd, 4 ** (2 * k)), k=k)
        sq1 = Fraction((16 * k * k + 32 * k + 11) * odd, 4 ** (k + 1)) ** 2
        check("p_{4k+3}(h) + p_{4k-1}(h) square value", p(4 * k + 3)(h) + p(4 * k - 1)(h) == sq1, k=k)
        sq2 = Fraction((4 * k + 3) * odd, 2 ** (2 * k + 1)) ** 2
        check("p_{4k+1}(h) + p_{4k}(h) + p_{4k-1}(h) square value", three(h) == sq2, k=k)

    x = X
    check("p_1(x-1) + x = x^2", p(1).shift(-1) + x == x**2)
    check("p_2(x-1) + x = x^3", p(2).shift(-1) + x == x**3)
    check("p_3(-x-3) = p_3(x)", p(3).reflect(3) == p(3))
    check("p_4(x) + p_4(-x) = 20x^2(x^2+5)", p(4) + p(4).reflect(0) == 20 * x**2 * (x**2 + 5))
    check("p_4(x) + p_4(-x-6) = -10(x+2)(x+4)(x+3)^2", p(4) + p(4).reflect(6) == -10 * (x + 2) * (x + 4) * (x + 3) ** 2)
    check("p_4(x) + p_4(-x-8) = -20(x^2+8x+21)(x+4)^2", p(4) + p(4).reflect(8) == -20 * (x**2 + 8 * x + 21) * (x + 4) ** 2)
    # p_2(x) + p_2(y) factorization, checked as polynomials in x for 25 integer y
    for yv in range(-12, 13):
        lhs = p(2) + p(2)(yv)
        rhs = (x + yv + 2) * (x**2 - yv * x + yv * yv + x + yv)
        check("p_2(x) + p_2(y) = (x+y+2)(x^2-xy+y^2+x+y)", lhs == rhs, y=yv)
    if misprint_fails:
        rep.notes.append(f"(x+1)^2 form of the three-term identity fails for k in {misprint_fails}")
    rep.data["misprint_failures"] = misprint_fails
    return rep


# -- point tables -------------------------------------------------------------


def load_fixtures() -> list[dict]:
    text = resources.files("runge_kit").joinpath("data/fixtures.jsonl").read_text()
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def point_y(rec: dict) -> Fraction:
    """The affine ``y`` of a fixture point.

    Genus 2 points are displayed as ``(X/Z, Y/Z)`` from weighted projective
    coordinates ``(X : Y : Z)``, whose affine point is ``(X/Z, Y/Z^3)``.
    """
    y = Fraction(rec["y"])
    if rec.get("coords") != "weighted":
        return y
    z = Fraction(rec["x"]).denominator
    if z == 1 or y == 0:
        return y
    if y.denominator != z:
        raise ValueError(f"weighted point {rec['x']}, {rec['y']} has mismatched denominators")
    return y / z**2


def point_table_verify(fixtures: list[dict] | None = None) -> CheckReport:
    """Check every transcribed point on its curve; says nothing about completeness."""
    rep = CheckReport("point-tables")
    seen = set()
    for rec in fixtures if fixtures is not None else load_fixtures():
        n, T, m = rec["n"], tuple(rec["T"]), rec["m"]
        g = g_poly(n, T)
        x = Fraction(rec["x"])
        v = g(x)
        rep.checked += 1
        if rec["kind"] == "point":
            y = point_y(rec)
            ok = y**m == v
            key = (rec["source"], n, T, x, y)
            if key in seen:
                rep.notes.append(f"duplicate listing of {rec['x']},{rec['y']} for T={T}")
            seen.add(key)
        else:
            ok = v.denominator == 1 and perfect_power_test(int(v), m) is not None
        if not ok:
            rep.fail(**rec)
    return rep

