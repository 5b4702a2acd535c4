"""Exact integer, rational and univariate polynomial arithmetic.

Everything here is pure: values are immutable and no floating point is used.
A single :class:`Poly` type carries both integer and rational coefficient
polynomials; coefficients that are integral are stored as ``int``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Sequence, Union

Number = Union[int, Fraction]

NEG_INF = float("-inf")


class InexactDivision(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


# --------------------------------------------------------------------------
# integers


def int_nth_root(x: int, n: int) -> tuple[int, bool]:
    """Return ``(floor(x ** (1/n)), exact)`` for ``x >= 0``, ``n >= 1``."""
    if n < 1:
        raise ValueError("root index must be positive")
    if x < 0:
        raise ValueError("int_nth_root needs a nonnegative argument")
    if x < 2 or n == 1:
        return x, True
    if n == 2:
        r = math.isqrt(x)
        return r, r * r == x
    bits = x.bit_length()
    if n >= bits:
        # 1 < x < 2**n
        return 1, False
    r = 1 << -(-bits // n)
    while True:
        s = ((n - 1) * r + x // r ** (n - 1)) // n
        if s >= r:
            break
        r = s
    return r, r ** n == x


def perfect_power_test(x: int, m: int) -> int | None:
    """Return ``y`` with ``y**m == x`` or ``None``.

    For even ``m`` the nonnegative root is returned; the caller owns the sign.
    """
    if m < 2:
        raise ValueError("exponent must be at least 2")
    if x < 0:
        if m % 2 == 0:
            return None
        r, ok = int_nth_root(-x, m)
        return -r if ok else None
    r, ok = int_nth_root(x, m)
    return r if ok else None


_SMALL_PRIMES = [
    p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1))
]


def max_power_exponent(v: int) -> int:
    """Largest ``k`` such that ``v`` is a perfect ``k``-th power, for ``v >= 2``."""
    if v < 2:
        raise ValueError("need v >= 2")
    k = 1
    changed = True
    while changed:
        changed = False
        limit = v.bit_length()
        for q in _SMALL_PRIMES:
            if q > limit:
                break
            r, ok = int_nth_root(v, q)
            if ok:
                v, k, changed = r, k * q, True
                break
    return k


def power_exponents(v: int, m_max: int) -> list[tuple[int, int]]:
    """All ``(m, y)`` with ``2 <= m <= m_max`` and ``y**m == v``.

    Nonnegative ``y`` for ``v >= 0``; negative ``v`` only admits odd ``m``.
    ``v`` in ``{-1, 0, 1}`` is rejected because every exponent works.
    """
    if -1 <= v <= 1:
        raise ValueError("trivial value has every exponent")
    k = max_power_exponent(abs(v))
    out = []
    for m in range(2, min(k, m_max) + 1):
        if k % m or (v < 0 and m % 2 == 0):
            continue
        y = int_nth_root(abs(v), m)[0]
        out.append((m, -y if v < 0 else y))
    return out


# --------------------------------------------------------------------------
# polynomials


def _norm(c) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class Poly:
    """Dense univariate polynomial with exact coefficients, constant term first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Number, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "Poly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    # basic properties
    @property
    def degree(self):
        """Degree; the zero polynomial has degree ``-inf``."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Number]:
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = str(a)
            else:
                mon = "x" if i == 1 else f"x^{i}"
                body = mon if a == 1 else f"{a}*{mon}"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return NotImplemented

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly((1,)), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        lb = other.coeffs[-1]
        if len(r) - 1 < db:
            return Poly(), self
        q = [0] * (len(r) - db)
        integral = isinstance(lb, int) and lb in (1, -1)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            t = c * lb if integral else Fraction(c) / lb
            q[i - db] = t
            for j, cb in enumerate(other.coeffs):
                r[i - db + j] -= t * cb
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other) -> "Poly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "Poly":
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other) -> "Poly":
        """Quotient of an exact division; raises :class:`InexactDivision` otherwise."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero constant")
            return Poly(Fraction(c) / other for c in self.coeffs)
        q, r = self.divmod(other)
        if r:
            raise InexactDivision(f"remainder {r} dividing {self} by {other}")
        return q

    # evaluation and transforms
    def __call__(self, x):
        if isinstance(x, Poly):
            return self.compose(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, (int, Fraction)) else acc

    def compose(self, inner: "Poly") -> "Poly":
        """``self(inner(x))``."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, c: Number) -> "Poly":
        """``self(x + c)``, by repeated synthetic division."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += c * cs[j + 1]
        return Poly(cs)

    def reflect(self, c: Number = 0) -> "Poly":
        """``self(-x - c)``."""
        s = self.shift(-c) if c else self
        return Poly(a if i % 2 == 0 else -a for i, a in enumerate(s.coeffs))

    def scale_arg(self, a: Number) -> "Poly":
        """``self(a * x)``."""
        out, p = [], 1
        for c in self.coeffs:
            out.append(c * p)
            p *= a
        return Poly(out)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    # integrality
    def denominator(self) -> int:
        return reduce(math.lcm, (Fraction(c).denominator for c in self.coeffs), 1)

    def clear_denominators(self) -> tuple[int, "Poly"]:
        """Return ``(D, D*self)`` with ``D`` the least positive clearing factor."""
        d = self.denominator()
        return d, self * d

    def content(self) -> Number:
        if not self.coeffs:
            raise ValueError("content of the zero polynomial")
        if self.is_integral():
            return abs(reduce(math.gcd, self.coeffs))
        d = self.denominator()
        return Fraction(abs(reduce(math.gcd, (int(c * d) for c in self.coeffs))), d)

    def primitive(self) -> "Poly":
        """Integer primitive part with positive leading coefficient."""
        c = self.content()
        if self.lc < 0:
            c = -c
        if c == 1:
            return self
        return Poly(Fraction(a) / c for a in self.coeffs)

    def monic(self) -> "Poly":
        lc = self.lc
        if lc == 0:
            raise ValueError("zero polynomial cannot be made monic")
        return self if lc == 1 else Poly(Fraction(c) / lc for c in self.coeffs)


X = Poly.x()


def as_poly(obj) -> Poly:
    if isinstance(obj, Poly):
        return obj
    if isinstance(obj, (int, Fraction)):
        return Poly((obj,))
    return Poly(obj)


def content_primitive(f: Poly) -> tuple[int, Poly]:
    """Split an integer polynomial as ``content * primitive`` with content > 0."""
    if f.is_zero():
        raise ValueError("zero polynomial has no content")
    if not f.is_integral():
        raise TypeError("content_primitive expects integer coefficients")
    c = abs(reduce(math.gcd, f.coeffs))
    return c, Poly(a // c for a in f.coeffs)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Primitive gcd with positive leading coefficient (over the rationals)."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = f, g
    while b:
        r = a % b
        a = b
        # keep coefficients small
        b = r.primitive() if r else r
    return a.primitive()


def resultant(f: Poly, g: Poly) -> Number:
    """Resultant via the Euclidean remainder sequence over the rationals."""
    if f.is_zero() or g.is_zero():
        return 0
    sign = 1
    acc = Fraction(1)
    while True:
        df, dg = f.degree, g.degree
        if dg == 0:
            return _norm(acc * Fraction(g.lc) ** df * sign)
        if df < dg:
            if (df * dg) % 2:
                sign = -sign
            f, g = g, f
            continue
        r = f % g
        if r.is_zero():
            return 0
        dr = r.degree
        if (df * dg) % 2:
            sign = -sign
        acc *= Fraction(g.lc) ** (df - dr)
        f, g = g, r


def discriminant(f: Poly) -> Number:
    """``(-1)^(d(d-1)/2) * res(f, f') / lc(f)``."""
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    r = Fraction(resultant(f, f.derivative())) / f.lc
    if (d * (d - 1) // 2) % 2:
        r = -r
    return _norm(r)


def squarefree_part(f: Poly) -> Poly:
    """Primitive square-free part (product of the distinct irreducible factors)."""
    if f.degree < 1:
        return Poly((1,))
    g = poly_gcd(f, f.derivative())
    return f.primitive().exact_div(g).primitive() if g.degree > 0 else f.primitive()


def squarefree_decomposition(f: Poly) -> tuple[Number, list[tuple[Poly, int]]]:
    """Yun's algorithm.

    Returns ``(c, [(f_i, i), ...])`` with ``f == c * prod(f_i ** i)``, each
    ``f_i`` primitive, square-free, positive leading coefficient, pairwise
    coprime; constant factors are omitted.
    """
    if f.is_zero():
        raise ValueError("square-free decomposition of zero")
    if f.degree == 0:
        return f.coeffs[0], []
    prim = f.primitive()
    c = _norm(Fraction(f.lc) / prim.lc)
    out = []
    a = prim
    b = a.derivative()
    g = poly_gcd(a, b)
    w = a.exact_div(g)
    y = b.exact_div(g)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        h = poly_gcd(w, z) if z else w.primitive()
        if h.degree > 0:
            out.append((h.primitive(), i))
        w = w.exact_div(h)
        y = z.exact_div(h) if z else Poly()
        i += 1
    # rebalance the unit/content so the recomposition is exact
    prod = Poly((1,))
    for h, k in out:
        prod = prod * h ** k
    c = _norm(Fraction(f.lc) / prod.lc)
    return c, out


# --------------------------------------------------------------------------
# roots


def _primes() -> Iterator[int]:
    yield from _SMALL_PRIMES
    p = _SMALL_PRIMES[-1] + 2
    while True:
        if all(p % q for q in range(3, math.isqrt(p) + 1, 2)):
            yield p
        p += 2


def _eval_mod(cs: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % m
    return acc


def _gcd_degree_mod(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p), coefficients constant-first."""

    def strip(v):
        while v and v[-1] % p == 0:
            v.pop()
        return v

    a = strip([c % p for c in a])
    b = strip([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            t = a[-1] * inv % p
            off = len(a) - len(b)
            for j, cb in enumerate(b):
                a[off + j] = (a[off + j] - t * cb) % p
            strip(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _cauchy_bound(cs: Sequence[Number]) -> int:
    lc = abs(Fraction(cs[-1]))
    m = max((abs(Fraction(c)) for c in cs[:-1]), default=Fraction(0))
    return math.ceil(1 + m / lc)


def integer_roots(f: Poly) -> list[tuple[int, int]]:
    """Integer roots of ``f`` with multiplicities, sorted by root.

    Candidates come from Hensel-lifting the roots of ``f`` modulo a small prime
    for which the square-free part stays square-free; every candidate is
    confirmed by exact evaluation.
    """
    if f.is_zero():
        raise ValueError("integer roots of the zero polynomial")
    if not f.is_integral():
        f = f.clear_denominators()[1]
    cs = list(f.coeffs)
    roots: dict[int, int] = {}
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        roots[0] = k
    rest = Poly(cs[k:])
    if rest.degree >= 1:
        h = squarefree_part(rest)
        hc = list(h.coeffs)
        bound = min(abs(hc[0]), _cauchy_bound(hc))
        if h.degree == 1:
            if hc[0] % hc[1] == 0:
                cands = [-hc[0] // hc[1]]
            else:
                cands = []
        else:
            cands = _hensel_candidates(h, bound)
        for r in cands:
            if r != 0 and abs(r) <= bound and h(r) == 0:
                roots[r] = _multiplicity(rest, r)
    return sorted(roots.items())


def _hensel_candidates(h: Poly, bound: int) -> list[int]:
    hc = list(h.coeffs)
    dh = list(h.derivative().coeffs)
    for p in _primes():
        if hc[-1] % p == 0:
            continue
        if _gcd_degree_mod(hc, dh, p) == 0:
            break
    base = [r for r in range(p) if _eval_mod(hc, r, p) == 0]
    target = 2 * bound + 1
    out = []
    for r in base:
        mod = p
        while mod < target:
            mod = mod * mod
            fr = _eval_mod(hc, r, mod)
            dr = _eval_mod(dh, r, mod)
            r = (r - fr * pow(dr, -1, mod)) % mod
        if r > mod // 2:
            r -= mod
        out.append(r)
    return out


def _multiplicity(f: Poly, r: int) -> int:
    k = 0
    lin = Poly((-r, 1))
    while True:
        q, rem = f.divmod(lin)
        if rem:
            return k
        f, k = q, k + 1


def rational_roots(f: Poly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, sorted by root."""
    if f.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    if f.degree < 1:
        return []
    g = f.primitive()
    a = g.lc
    d = g.degree
    # a^(d-1) g(y/a) is monic with integer coefficients
    monic = Poly(c * a ** (d - 1 - i) if i < d else 1 for i, c in enumerate(g.coeffs))
    return [(Fraction(y, a), m) for y, m in integer_roots(monic)]


@dataclass(frozen=True)
class IntInterval:
    """Closed integer interval ``[lo, hi]``; ``lo is None`` marks the empty interval."""

    lo: int | None
    hi: int | None

    @classmethod
    def empty(cls) -> "IntInterval":
        return cls(None, None)

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    def __len__(self) -> int:
        return 0 if self.lo is None else self.hi - self.lo + 1

    def __contains__(self, x: int) -> bool:
        return self.lo is not None and self.lo <= x <= self.hi

    def hull(self, other: "IntInterval") -> "IntInterval":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return IntInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "IntInterval") -> "IntInterval":
        if self.is_empty or other.is_empty:
            return IntInterval.empty()
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return IntInterval(lo, hi) if lo <= hi else IntInterval.empty()

    def __iter__(self) -> Iterator[int]:
        if self.lo is not None:
            yield from range(self.lo, self.hi + 1)

    def as_list(self):
        return None if self.is_empty else [self.lo, self.hi]

    def __str__(self) -> str:
        return "[]" if self.is_empty else f"[{self.lo}, {self.hi}]"


def union_size(a: IntInterval, b: IntInterval) -> int:
    """Number of integers in ``a ∪ b``."""
    return len(a) + len(b) - len(a.intersect(b))


def sturm_sequence(f: Poly) -> list[Poly]:
    """Sturm chain of the square-free part of ``f``, each scaled to integers.

    Scaling uses positive factors only, so the sign pattern is unchanged.
    """
    h = squarefree_part(f)
    seq = [h, h.derivative().primitive()]
    while True:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        r = -r
        d = r.denominator()
        r = r * d
        g = abs(reduce(math.gcd, r.coeffs))
        seq.append(Poly(c // g for c in r.coeffs))
    return seq


def _variations(signs: Iterable[int]) -> int:
    v, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def real_root_hull(f: Poly) -> IntInterval:
    """Smallest integer interval ``[floor(r_min), ceil(r_max)]`` over the real roots.

    Exact: Sturm counts at integer points, bisected from a Cauchy bound.
    """
    if f.degree < 1:
        raise ValueError("real_root_hull needs a nonconstant polynomial")
    seq = sturm_sequence(f)
    h = seq[0]
    lcs = [(s.lc, s.degree) for s in seq]
    v_neg = _variations(_sign(c) * (-1) ** (d % 2) for c, d in lcs)
    v_pos = _variations(_sign(c) for c, _ in lcs)
    total = v_neg - v_pos
    if total == 0:
        return IntInterval.empty()

    def n_le(x: int) -> int:
        # number of distinct real roots <= x
        return v_neg - _variations(_sign(s(x)) for s in seq)

    b = _cauchy_bound(h.coeffs)

    # lo = max{L : no root < L}
    lo_a, lo_b = -b - 1, b + 1  # invariant: pred(lo_a) true, pred(lo_b) false
    while lo_b - lo_a > 1:
        mid = (lo_a + lo_b) // 2
        below = n_le(mid) - (1 if h(mid) == 0 else 0)
        if below == 0:
            lo_a = mid
        else:
            lo_b = mid
    # hi = min{U : all roots <= U}
    hi_a, hi_b = -b - 1, b + 1  # pred(hi_a) false, pred(hi_b) true
    while hi_b - hi_a > 1:
        mid = (hi_a + hi_b) // 2
        if n_le(mid) == total:
            hi_b = mid
        else:
            hi_a = mid
    return IntInterval(lo_a, hi_b)


def count_real_roots(f: Poly) -> int:
    """Number of distinct real roots."""
    if f.degree < 1:
        return 0
    seq = sturm_sequence(f)
    lcs = [(s.lc, s.degree) for s in seq]
    v_neg = _variations(_sign(c) * (-1) ** (d % 2) for c, d in lcs)
    v_pos = _variations(_sign(c) for c, _ in lcs)
    return v_neg - v_pos


def interpolate(points: Sequence[tuple[Number, Number]]) -> Poly:
    """Lagrange interpolation through distinct abscissae, exact (Newton form)."""
    xs = [Fraction(x) for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly((coef[-1],))
    for i in range(n - 2, -1, -1):
        out = out * Poly((-xs[i], 1)) + coef[i]
    return out
