"""Complete integer solution of ``y^m = f(x)`` by Runge's method.

For monic ``f`` of degree ``d`` and ``e = gcd(m, d) >= 2`` let ``Q`` be the
polynomial part of ``f^(1/e)`` and ``D`` its denominator. Outside the real
root hulls of ``D^e f - (DQ - k1)^e`` and ``D^e f - (DQ + k2)^e`` every
solution satisfies ``D^e f(x) = (DQ(x) + k)^e`` for some ``-k1 < k < k2``;
the hulls are enumerated and the finitely many offset equations solved.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import kernels
from .exact import (
    IntInterval,
    Poly,
    integer_roots,
    perfect_power_test,
    real_root_hull,
)
from .family import EquationInstance, enumerate_tuples, g_poly

CHANNELS = ("interval", "offset", "root")


class RungeInapplicable(ValueError):
    """``gcd(m, deg f) = 1`` or ``f`` not monic."""


@dataclass(frozen=True)
class RootPart:
    Q: Poly
    D: int
    e: int

    def scaled(self) -> Poly:
        """``D * Q``, an integer polynomial."""
        return self.Q * self.D


@dataclass(frozen=True)
class SolutionRecord:
    x: int
    y: int
    m: int
    channel: str = "interval"
    origin: tuple[int, tuple[int, ...]] | None = None

    def key(self):
        return (self.x, self.y)

    def to_dict(self) -> dict:
        d = {"x": str(self.x), "y": str(self.y), "m": self.m, "channel": self.channel}
        if self.origin is not None:
            d["n"] = self.origin[0]
            d["T"] = list(self.origin[1])
        return d


@dataclass
class ReductionState:
    k1: int
    k2: int
    I1: IntInterval
    I2: IntInterval
    step1: int = 1
    step2: int = 1
    iterations1: int = 1
    iterations2: int = 1
    subequation_count: int = 0

    def to_dict(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "I1": self.I1.as_list(),
            "I2": self.I2.as_list(),
            "step1": self.step1,
            "step2": self.step2,
            "iterations1": self.iterations1,
            "iterations2": self.iterations2,
            "subequation_count": self.subequation_count,
        }


@dataclass
class EquationReport:
    instance: EquationInstance
    root_part: RootPart | None
    initial: ReductionState | None
    final: ReductionState | None
    solutions: list[SolutionRecord]
    method: str = "runge"
    parametric: bool = False
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        f, m = self.instance.f, self.instance.m
        for s in self.solutions:
            if s.y ** m != f(s.x):
                raise AssertionError(f"solution {s} does not satisfy y^{m} = f(x)")

    @property
    def pairs(self) -> set[tuple[int, int]]:
        return {s.key() for s in self.solutions}

    def to_dict(self, timing: bool = False) -> dict:
        inst = self.instance
        d = {
            "m": inst.m,
            "f": [str(c) for c in inst.f.coeffs],
            "method": self.method,
            "solutions": [s.to_dict() for s in self.solutions],
            "parametric": self.parametric,
        }
        if inst.origin is not None:
            d["n"] = inst.origin[0]
            d["T"] = list(inst.origin[1])
        if self.root_part is not None:
            d["root_part"] = {
                "Q": [str(c) for c in self.root_part.Q.coeffs],
                "D": str(self.root_part.D),
                "e": self.root_part.e,
            }
        if self.initial is not None:
            d["initial"] = self.initial.to_dict()
        if self.final is not None:
            d["final"] = self.final.to_dict()
        if self.notes:
            d["notes"] = list(self.notes)
        if timing:
            d["wall_time"] = round(self.wall_time, 6)
        return d


# --------------------------------------------------------------------------


def root_poly_part(f: Poly, e: int) -> RootPart:
    """Monic ``Q`` with ``deg(f - Q^e) < deg f - deg Q``, by descending coefficients."""
    if not f.is_monic():
        raise RungeInapplicable("f must be monic")
    d = f.degree
    if e < 2 or d % e:
        raise RungeInapplicable(f"e={e} does not divide deg f={d}")
    k = d // e
    q = [Fraction(0)] * (k + 1)
    q[k] = Fraction(1)
    for j in range(1, k + 1):
        Qp = Poly(q)
        c = f[d - j] - (Qp ** e)[d - j]
        q[k - j] = Fraction(c) / e
    Q = Poly(q)
    defect = f - Q ** e
    if not defect.is_zero() and defect.degree > d - k - 1:
        raise AssertionError("root part defect too large")
    return RootPart(Q, Q.denominator(), e)


def offset_poly(f: Poly, rp: RootPart, k: int) -> Poly:
    """``D^e f - (D Q + k)^e``."""
    return f * rp.D ** rp.e - (rp.scaled() + k) ** rp.e


def _hull(f: Poly) -> IntInterval:
    if f.is_zero():
        raise ValueError("zero offset polynomial has no root hull")
    if f.degree < 1:
        return IntInterval.empty()
    return real_root_hull(f)


def bounding_intervals(f: Poly, rp: RootPart, k1: int, k2: int) -> tuple[IntInterval, IntInterval]:
    if k1 < 1 or k2 < 1:
        raise ValueError("k1, k2 must be positive")
    P = rp.scaled()
    K = max(k1, k2)
    middle = _hull(P * P - K * K)
    I1 = _hull(offset_poly(f, rp, -k1)).hull(middle)
    I2 = _hull(offset_poly(f, rp, k2)).hull(middle)
    return I1, I2


def enumeration_region(I1: IntInterval, I2: IntInterval) -> list[IntInterval]:
    """Disjoint intervals to enumerate: the union, or the convex hull when there is a gap."""
    if I1.is_empty:
        return [] if I2.is_empty else [I2]
    if I2.is_empty:
        return [I1]
    return [I1.hull(I2)]


def region_size(I1: IntInterval, I2: IntInterval) -> int:
    return sum(len(i) for i in enumeration_region(I1, I2))


def _state(f, rp, k1, k2, step1=1, step2=1, it1=1, it2=1) -> ReductionState:
    I1, I2 = bounding_intervals(f, rp, k1, k2)
    count = region_size(I1, I2) + k1 + k2 - 1
    return ReductionState(k1, k2, I1, I2, step1, step2, it1, it2, count)


def _fourth_root(n: int) -> int:
    return max(1, math.isqrt(math.isqrt(n)))


def reduction_schedule(f: Poly, rp: RootPart) -> tuple[ReductionState, ReductionState]:
    """Return ``(initial, final)`` states.

    Starting from the base hulls ``I_a, I_b`` (``k1 = k2 = 1``) the steps are
    ``floor(|I_a|^(1/4))`` and ``floor(|I_b|^(1/4))``; each side's multiplier
    grows by one while that side's cost (hull size plus the number of offset
    values it contributes) strictly decreases.
    """
    base = _state(f, rp, 1, 1)
    Ia, Ib = base.I1, base.I2
    if Ia.is_empty and Ib.is_empty:
        return base, base
    P = rp.scaled()

    def side(sign: int, size0: int) -> tuple[int, int, int]:
        step = _fourth_root(size0) if size0 else 1
        best_k, best_i = 1, 1
        best_cost = size0 + 1
        i = 1
        while True:
            k = i * step
            h = _hull(offset_poly(f, rp, sign * k)).hull(_hull(P * P - k * k))
            cost = len(h) + k
            if cost < best_cost:
                best_k, best_i, best_cost = k, i, cost
                i += 1
            else:
                break
        return best_k, best_i, step

    k1, i1, s1 = side(-1, len(Ia))
    k2, i2, s2 = side(+1, len(Ib))
    final = _state(f, rp, k1, k2, s1, s2, i1, i2)
    if final.subequation_count > base.subequation_count:
        final = ReductionState(1, 1, Ia, Ib, s1, s2, 1, 1, base.subequation_count)
    base.step1, base.step2 = s1, s2
    return base, final


# --------------------------------------------------------------------------


def _records_for(f: Poly, m: int, x: int, channel: str, origin) -> list[SolutionRecord]:
    v = f(x)
    y = perfect_power_test(v, m)
    if y is None:
        return []
    if m % 2 == 0 and y > 0:
        return [SolutionRecord(x, y, m, channel, origin), SolutionRecord(x, -y, m, channel, origin)]
    return [SolutionRecord(x, y, m, channel, origin)]


def enumerate_interval(
    f: Poly, I: IntInterval, m: int, origin=None, channel: str = "interval"
) -> list[SolutionRecord]:
    """Every ``(x, y)`` with ``x`` in ``I`` and ``y^m = f(x)``, both signs for even ``m``."""
    if I.is_empty:
        return []
    out = []
    for x in kernels.power_candidates(f, m, I.lo, I.hi):
        out.extend(_records_for(f, m, x, channel, origin))
    return out


def solve_offset_equations(
    f: Poly, rp: RootPart, k1: int, k2: int, m: int, origin=None
) -> tuple[list[SolutionRecord], bool]:
    """Integer roots of the offset equations for ``-k1 < k < k2``.

    Returns the records and a flag set when an offset polynomial vanishes
    identically (``f`` is an exact ``e``-th power), in which case that
    offset contributes a parametric family instead of finitely many roots.
    """
    out: list[SolutionRecord] = []
    parametric = False
    for k in range(-k1 + 1, k2):
        g = offset_poly(f, rp, k)
        if g.is_zero():
            parametric = True
            continue
        for x, _ in integer_roots(g) if g.degree >= 1 else []:
            out.extend(_records_for(f, m, x, "offset", origin))
    return out, parametric


def _dedupe(records: Iterable[SolutionRecord]) -> list[SolutionRecord]:
    order = {c: i for i, c in enumerate(CHANNELS)}
    best: dict[tuple[int, int], SolutionRecord] = {}
    for r in records:
        cur = best.get(r.key())
        if cur is None or order[r.channel] < order[cur.channel]:
            best[r.key()] = r
    return sorted(best.values(), key=lambda r: (r.x, r.y))


def runge_solve(
    m: int,
    f: Poly,
    origin: tuple[int, tuple[int, ...]] | None = None,
    reduce: bool = True,
    k1: int | None = None,
    k2: int | None = None,
) -> EquationReport:
    """Solve ``y^m = f(x)`` completely.

    ``reduce=False`` keeps ``k1 = k2 = 1``; explicit ``k1``/``k2`` override the schedule.
    """
    t0 = time.perf_counter()
    if not f.is_monic():
        raise RungeInapplicable("Runge inapplicable: f must be monic")
    d = f.degree
    e = math.gcd(m, d)
    if e < 2:
        raise RungeInapplicable(f"Runge inapplicable: gcd(m, deg)={e}")
    inst = EquationInstance(m, f, origin)
    rp = root_poly_part(f, e)
    if k1 is not None or k2 is not None:
        initial = _state(f, rp, 1, 1)
        final = _state(f, rp, k1 or 1, k2 or 1)
    elif reduce:
        initial, final = reduction_schedule(f, rp)
    else:
        initial = final = _state(f, rp, 1, 1)

    records: list[SolutionRecord] = []
    for I in enumeration_region(final.I1, final.I2):
        records.extend(enumerate_interval(f, I, m, origin))
    off, parametric = solve_offset_equations(f, rp, final.k1, final.k2, m, origin)
    records.extend(off)
    for x, _ in integer_roots(f):
        records.append(SolutionRecord(x, 0, m, "root", origin))
    notes = []
    if parametric:
        notes.append("f is an exact e-th power: the k=0 offset vanishes identically")
    rep = EquationReport(
        inst, rp, initial, final, _dedupe(records), parametric=parametric, notes=notes
    )
    rep.wall_time = time.perf_counter() - t0
    return rep


def _solve_tuple(args) -> EquationReport:
    m, n, T, reduce = args
    return runge_solve(m, g_poly(n, T), (n, T), reduce=reduce)


def batch_solve(
    m: int,
    n: int,
    jobs: int = 1,
    reduce: bool = True,
    tuples: Sequence[tuple[int, ...]] | None = None,
) -> Iterator[EquationReport]:
    """One report per ``T`` in ``A_n`` (lexicographic order)."""
    from .parallel import ordered_map

    e = math.gcd(m, n + 1)
    if e < 2:
        raise RungeInapplicable(f"Runge inapplicable: gcd(m, deg)={e}")
    todo = list(tuples) if tuples is not None else list(enumerate_tuples(n))
    yield from ordered_map(_solve_tuple, [(m, n, T, reduce) for T in todo], jobs)


def brute_force_solutions(f: Poly, m: int, lo: int, hi: int) -> set[tuple[int, int]]:
    """Direct scan of ``[lo, hi]``; used as an oracle and for non-Runge exponents."""
    out = set()
    for r in enumerate_interval(f, IntInterval(lo, hi), m):
        out.add(r.key())
    return out
