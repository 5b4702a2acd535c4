"""Products of consecutive integers and the equation polynomials built from them.

``p_a(x) = x(x+1)...(x+a)`` and, for a tuple ``T = (a_1 < ... < a_k)`` drawn
from ``{0, ..., n-1}``, ``g_T(x) = p_n(x) + sum_i p_{a_i}(x)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .exact import (
    Poly,
    discriminant,
    integer_roots,
    poly_gcd,
    squarefree_decomposition,
)


class InvalidTuple(ValueError):
    pass


@dataclass(frozen=True)
class EquationInstance:
    """One equation ``y^m = f(x)``, optionally tagged with the ``(n, T)`` it came from."""

    m: int
    f: Poly
    origin: tuple[int, tuple[int, ...]] | None = None

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("exponent m must be >= 2")
        if self.origin is not None:
            n, T = self.origin
            if g_poly(n, T) != self.f:
                raise ValueError("polynomial does not match its (n, T) origin")

    @classmethod
    def from_tuple(cls, m: int, n: int, T: Sequence[int]) -> "EquationInstance":
        T = tuple(T)
        return cls(m, g_poly(n, T), (n, T))


@lru_cache(maxsize=None)
def product_poly(a: int) -> Poly:
    """``p_a(x) = prod_{i=0}^{a} (x + i)``."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    if a == 0:
        return Poly((0, 1))
    return product_poly(a - 1) * Poly((a, 1))


def validate_tuple(n: int, T: Sequence[int]) -> tuple[int, ...]:
    T = tuple(int(a) for a in T)
    if n < 1:
        raise InvalidTuple("n must be positive")
    if not T:
        raise InvalidTuple("tuple must be nonempty")
    if T[0] < 0 or T[-1] >= n:
        raise InvalidTuple(f"entries of {T} must lie in [0, {n - 1}]")
    if any(a >= b for a, b in zip(T, T[1:])):
        raise InvalidTuple(f"entries of {T} must be strictly increasing")
    return T


def enumerate_tuples(n: int) -> Iterator[tuple[int, ...]]:
    """All nonempty subsets of ``{0, ..., n-1}`` in lexicographic order (``2^n - 1`` of them)."""
    if n < 1:
        raise ValueError("n must be positive")

    def rec(prefix: tuple[int, ...], start: int):
        for a in range(start, n):
            t = prefix + (a,)
            yield t
            yield from rec(t, a + 1)

    return rec((), 0)


def g_poly(n: int, T: Sequence[int]) -> Poly:
    T = validate_tuple(n, T)
    out = product_poly(n)
    for a in T:
        out = out + product_poly(a)
    return out


def cofactor_h(n: int, T: Sequence[int]) -> tuple[Poly, Poly, tuple[int, ...]]:
    """Split ``g_T = p_{a_1} * h_T`` for ``a_1 >= 1``.

    Returns ``(p_{a_1}, h_T, T')`` where ``h_T(x) = 1 + g_{T'}(x + a_1 + 1)``.
    ``T'`` includes ``n - a_1 - 1`` as its top entry, so ``g_{T'}`` here is the
    plain sum of ``p_{a}`` over ``T'`` (the top entry plays the role of ``p_n``).
    """
    T = validate_tuple(n, T)
    a1 = T[0]
    if a1 == 0:
        raise InvalidTuple("cofactor_h needs a_1 >= 1")
    Tp = tuple(a - a1 - 1 for a in T[1:]) + (n - a1 - 1,)
    s = Poly()
    for a in Tp:
        s = s + product_poly(a)
    h = s.shift(a1 + 1) + 1
    return product_poly(a1), h, Tp


@dataclass
class CheckReport:
    """Outcome of a batch of exact checks; ``failures`` is expected to stay empty."""

    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **info) -> None:
        self.failures.append(info)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures,
            "notes": self.notes,
            "data": self.data,
        }


def lemma3_verify(n: int) -> CheckReport:
    """Check the structural facts about ``g_T`` for every ``T`` with ``a_1 >= 1``.

    * ``g_T = p_{a_1} h_T`` exactly, ``deg h_T = n - a_1``;
    * ``h_T(x0) > 0`` for ``x0 = 0, -1, ..., -a_1`` (the roots of ``p_{a_1}`` stay simple);
    * ``h_T(0) = h_T(-1) = 3 (mod 4)`` when ``T`` starts ``(1, 3, a_3 >= 5)``;
    * ``g_T(x) = +-1`` has no integer solution.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rep = CheckReport(f"lemma3 n={n}")
    for T in enumerate_tuples(n):
        if T[0] == 0:
            continue
        rep.checked += 1
        g = g_poly(n, T)
        p, h, _ = cofactor_h(n, T)
        if p * h != g:
            rep.fail(T=list(T), check="factorization")
        if h.degree != n - T[0]:
            rep.fail(T=list(T), check="degree", degree=h.degree)
        for x0 in range(0, -T[0] - 1, -1):
            if not h(x0) > 0:
                rep.fail(T=list(T), check="simple-root", x0=x0, value=h(x0))
        if len(T) >= 3 and T[0] == 1 and T[1] == 3 and T[2] >= 5:
            r0, r1 = h(0) % 4, h(-1) % 4
            if (r0, r1) != (3, 3):
                rep.fail(T=list(T), check="mod4", residues=[r0, r1])
        for c in (1, -1):
            if integer_roots(g - c):
                rep.fail(T=list(T), check=f"g={c}")
    return rep


def hyperelliptic_genus(f: Poly) -> tuple[int, bool]:
    """Genus of ``y^2 = f(x)`` and a flag set when ``f`` is a constant times a square."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    _, parts = squarefree_decomposition(f)
    d = sum(h.degree for h, k in parts if k % 2)
    if d == 0:
        return 0, True
    return (d - 1) // 2, False


def conjecture_factor(n: int, T: tuple[int, ...]) -> tuple[Poly, int] | None:
    """The repeated factor predicted for ``(n, T)``, or ``None`` if none is predicted."""
    x = Poly.x()
    if n >= 4 and T == (n - 4,):
        return x * x + (2 * n - 3) * x + (n * n - 3 * n + 1), 2
    if n >= 3 and T == (n - 3, n - 2):
        return x + (n - 1), 3
    if n >= 2 and T == (n - 2, n - 1):
        return x + n, 2
    return None


@dataclass
class MultipleRootHit:
    n: int
    T: tuple[int, ...]
    decomposition: list[tuple[Poly, int]]
    predicted: bool
    divisibility_ok: bool
    cofactor_squarefree: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "T": list(self.T),
            "decomposition": [[list(h.coeffs), k] for h, k in self.decomposition],
            "predicted": self.predicted,
            "divisibility_ok": self.divisibility_ok,
            "cofactor_squarefree": self.cofactor_squarefree,
        }


def _check_hit(n: int, T: tuple[int, ...]) -> MultipleRootHit:
    g = g_poly(n, T)
    _, parts = squarefree_decomposition(g)
    pred = conjecture_factor(n, T)
    div_ok = cof_ok = False
    if pred is not None:
        fac, k = pred
        q, r = g.divmod(fac ** k)
        div_ok = r.is_zero()
        if div_ok:
            cof_ok = poly_gcd(q, q.derivative()).degree == 0
    return MultipleRootHit(n, T, parts, pred is not None, div_ok, cof_ok)


def has_multiple_root(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree >= 1


def multiple_root_scan(n_max: int, n_min: int = 2) -> list[MultipleRootHit]:
    """Every ``(n, T)`` with ``n_min <= n <= n_max`` whose ``g_T`` has a repeated root.

    The exhaustive pass runs a square-free test modulo a prime in the kernel
    layer (square-free mod p implies square-free over the rationals for monic
    input); survivors are settled by an exact gcd.
    """
    from . import kernels

    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    hits = []
    for n in range(max(n_min, 1), n_max + 1):
        for mask in kernels.nonsquarefree_masks(n):
            T = tuple(i for i in range(n) if mask >> i & 1)
            if has_multiple_root(g_poly(n, T)):
                hits.append(_check_hit(n, T))
    hits.sort(key=lambda h: (h.n, h.T))
    return hits


@dataclass
class ConjectureReport:
    n_max: int
    hits: list[MultipleRootHit]
    unexpected: list[MultipleRootHit]
    missing: list[tuple[int, tuple[int, ...]]]

    @property
    def verified(self) -> bool:
        return (
            not self.unexpected
            and not self.missing
            and all(h.divisibility_ok and h.cofactor_squarefree for h in self.hits)
        )

    @property
    def status(self) -> str:
        return f"verified up to n={self.n_max}" if self.verified else "counterexample found"


def conjecture1_report(n_max: int) -> ConjectureReport:
    hits = multiple_root_scan(n_max)
    found = {(h.n, h.T) for h in hits}
    expected = {
        (n, T)
        for n in range(2, n_max + 1)
        for T in [(n - 4,), (n - 3, n - 2), (n - 2, n - 1)]
        if min(T) >= 0
    }
    unexpected = [h for h in hits if not h.predicted]
    missing = sorted(expected - found)
    return ConjectureReport(n_max, hits, unexpected, missing)


def multiple_root_by_discriminant(n: int, T: Sequence[int]) -> bool:
    """Independent route: a repeated root iff the discriminant vanishes."""
    return discriminant(g_poly(n, T)) == 0


def general_product_poly(p: int, q: int, n: int, T: Sequence[int]) -> Poly:
    """``P_{p,q,n} + sum_i P_{p,q,a_i}`` with ``P_{p,q,a}(x) = prod_{i=0}^{a} (p(x+i) + q)``."""
    if p < 1:
        raise ValueError("p must be positive")
    if abs(q) >= p:
        raise ValueError("need |q| < p")
    T = validate_tuple(n, T)

    def P(a: int) -> Poly:
        out = Poly((1,))
        for i in range(a + 1):
            out = out * Poly((p * i + q, p))
        return out

    out = P(n)
    for a in T:
        out = out + P(a)
    return out


def tuples_with_prefix(n: int, prefix: Sequence[int]) -> Iterator[tuple[int, ...]]:
    prefix = tuple(prefix)
    rest = range(prefix[-1] + 1 if prefix else 0, n)
    for k in range(len(rest) + 1):
        for c in combinations(rest, k):
            yield prefix + c
