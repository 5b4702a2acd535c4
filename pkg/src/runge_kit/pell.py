"""Pell-type recurrences over the integers and over Z[t], and the families built on them.

A particular solution of ``X^2 - A Z^2 = B`` composed with a solution of the
unit equation ``X^2 - A Z^2 = 1`` gives the next solution::

    X_n = X'' X_{n-1} + A Z'' Z_{n-1},   Z_n = Z'' X_{n-1} + X'' Z_{n-1}

The same recurrence over polynomials in ``t`` yields the polynomial
solutions of ``z^3 = p_2(x) + p_2(y)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import InexactDivision, Poly
from .family import CheckReport, product_poly


class PellError(ArithmeticError):
    """An emitted pair failed its defining identity."""


class PellStream:
    """Solutions of ``X^2 - A Z^2 = B`` generated from a particular and a unit solution.

    Works for integer or :class:`Poly` entries. Each emission is re-verified.
    """

    def __init__(self, A, B, particular, fundamental):
        X1, Z1 = fundamental
        if (isinstance(Z1, Poly) and Z1.is_zero()) or (not isinstance(Z1, Poly) and Z1 == 0):
            raise ValueError("fundamental solution needs Z'' != 0")
        self.A, self.B = A, B
        self.particular = tuple(particular)
        self.fundamental = (X1, Z1)
        self._check(*self.particular, B)
        self._check(X1, Z1, 1)
        self.cursor = 0
        self._cur = self.particular

    def _check(self, X, Z, rhs) -> None:
        if X * X - self.A * Z * Z != rhs:
            raise PellError(f"X^2 - A Z^2 != {rhs} for (X, Z) = ({X}, {Z})")

    @property
    def current(self):
        return self._cur

    def __iter__(self):
        return self

    def __next__(self):
        X, Z = self._cur
        X1, Z1 = self.fundamental
        nxt = (X1 * X + self.A * Z1 * Z, Z1 * X + X1 * Z)
        self._check(*nxt, self.B)
        self._cur = nxt
        self.cursor += 1
        return nxt

    def take(self, count: int, include_seed: bool = False) -> list:
        out = [self._cur] if include_seed else []
        while len(out) < count:
            out.append(next(self))
        return out


def pell_next(stream: PellStream):
    return next(stream)


# -- polynomial stream for z^3 = p_2(x) + p_2(y) -----------------------------

T = Poly.x()
_W = 108 * T**6 - 1  # 108t^6 - 1
POLY_A = 3 * _W
POLY_B = 12 * (2916 * T**12 - 135 * T**6 + 1)
U0 = 3 * (6 * T**3 + 1) * _W
V0 = 108 * T**6 + 18 * T**3 - 1
U1 = (6 * T**2 - 1) * (36 * T**4 + 6 * T**2 + 1)
V1 = 12 * T**3
LAMBDA = 6 * (27 * T**6 - 1) * _W


class PolyPellStream(PellStream):
    def __init__(self):
        super().__init__(POLY_A, POLY_B, (U0, V0), (U1, V1))


@lru_cache(maxsize=None)
def poly_pell_uv(n: int) -> tuple[Poly, Poly]:
    """``(U_n, V_n)`` of the polynomial stream, starting at ``(U', V')``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return U0, V0
    U, V = poly_pell_uv(n - 1)
    nxt = (U1 * U + POLY_A * V1 * V, V1 * U + U1 * V)
    if nxt[0] * nxt[0] - POLY_A * nxt[1] * nxt[1] != POLY_B:
        raise PellError(f"polynomial Pell identity fails at n={n}")
    return nxt


@dataclass(frozen=True)
class CubicSumFamily:
    n: int
    x: Poly
    y: Poly
    z: Poly

    def check(self) -> list[str]:
        """Names of the violated invariants (empty when all hold)."""
        bad = []
        p2 = product_poly(2)
        if self.z**3 != p2.compose(self.x) + p2.compose(self.y):
            bad.append("z^3 = p2(x) + p2(y)")
        if self.y != self.x.scale_arg(-1):
            bad.append("y(t) = x(-t)")
        d = 3 * (2 * self.n + 1)
        if self.x.degree != d or self.y.degree != d:
            bad.append("deg x = deg y = 3(2n+1)")
        if self.x.lc != 6 * 432**self.n or self.y.lc != -6 * 432**self.n:
            bad.append("LC(x) = -LC(y) = 6*432^n")
        return bad


def cubic_sum_solution(n: int) -> CubicSumFamily:
    """Polynomial solution ``(x_n, y_n, z_n)`` of ``z^3 = p_2(x) + p_2(y)``.

    Raises :class:`InexactDivision` if either quotient is not a polynomial.
    """
    U, V = poly_pell_uv(n)
    x = U.exact_div(3 * _W) - 1
    y = (3 * _W * V - (54 * T**6 + 1) * U).exact_div(LAMBDA) - 1
    if not (x.is_integral and y.is_integral):
        raise InexactDivision(f"non-integral coefficients at n={n}")
    z = 3 * T**2 * (x + y + 2)
    return CubicSumFamily(n, x, y, z)


def a_sequence(count: int) -> list[int]:
    seq = [1, 15]
    while len(seq) < count:
        seq.append(14 * seq[-1] - seq[-2])
    return seq[:count]


def verify_congruences(n_max: int) -> CheckReport:
    """Exact remainder checks behind the integrality of ``x_n`` and ``y_n``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rep = CheckReport("pell-congruences")
    A = a_sequence(n_max + 1)
    h = Fraction(3, 4)
    printed_fails = []
    for n in range(n_max + 1):
        U, V = poly_pell_uv(n)
        checks = {
            "U = 0 mod 3(108t^6-1)": U % (3 * _W),
            "3(108t^6-1)V - (54t^6+1)U = 0 mod lambda": (3 * _W * V - (54 * T**6 + 1) * U) % LAMBDA,
        }
        if n >= 1:
            a, b = A[n], A[n - 1]
            # printed without the factor 3 that U_0 carries; only the 3x form holds
            Uc = _W * (h * (7 * a - b) * T**3 + a)
            if not ((U - Uc) % LAMBDA).is_zero():
                printed_fails.append(n)
            Vc = 9 * (63 * a - 9 * b - 72) * T**9 + 108 * a * T**6 - h * (7 * a - b - 32) * T**3 - a
            checks["U closed form (times 3) mod lambda"] = (U - 3 * Uc) % LAMBDA
            checks["V closed form mod lambda"] = (V - Vc) % LAMBDA
            rep.checked += 1
            if (7 * a - b) % 4:
                rep.fail(n=n, check="7A_n - A_{n-1} = 0 mod 4")
        for name, r in checks.items():
            rep.checked += 1
            if not r.is_zero():
                rep.fail(n=n, check=name)
    rep.notes.append("closed forms checked from n=1; A_{-1} is not defined")
    if printed_fails:
        rep.notes.append(f"U closed form without the factor 3 fails for n in {printed_fails}")
    return rep


# -- quadratic equations ------------------------------------------------------


@dataclass(frozen=True)
class ConicPell:
    """``v^2 = c(alpha x^2 + beta x + gamma)`` rewritten as ``X^2 - A v^2 = B``."""

    c: int
    alpha: int
    beta: int
    gamma: int
    A: int = field(init=False)
    B: int = field(init=False)

    def __post_init__(self):
        if self.c == 0 or self.alpha == 0:
            raise ValueError("c and alpha must be nonzero")
        a, b, g = self.c * self.alpha, self.c * self.beta, self.c * self.gamma
        object.__setattr__(self, "A", 4 * a)
        object.__setattr__(self, "B", b * b - 4 * a * g)

    def forward(self, x: int) -> int:
        return 2 * self.c * self.alpha * x + self.c * self.beta

    def back(self, X: int) -> int | None:
        num, den = X - self.c * self.beta, 2 * self.c * self.alpha
        return num // den if num % den == 0 else None

    def value(self, x: int) -> int:
        return self.c * (self.alpha * x * x + self.beta * x + self.gamma)


def conic_to_pell(c: int, alpha: int, beta: int, gamma: int) -> ConicPell:
    return ConicPell(c, alpha, beta, gamma)


def conic_solutions(conic: ConicPell, seed: tuple[int, int], unit: tuple[int, int], count: int) -> list[tuple[int, int]]:
    """Integer ``(x, v)`` on the conic reached from ``seed`` by powers of ``unit``.

    Steps whose ``X`` does not map back to an integer ``x`` are skipped.
    """
    x0, v0 = seed
    if v0 * v0 != conic.value(x0):
        raise ValueError(f"seed {seed} is not on the conic")
    stream = PellStream(conic.A, conic.B, (conic.forward(x0), v0), unit)
    out = [(x0, v0)]
    for X, v in stream:
        if len(out) >= count:
            break
        x = conic.back(X)
        if x is not None:
            out.append((x, v))
    return out


# (a, b) -> (c, alpha, beta, gamma, seed, z as function of (x, v))
P3_CONICS: dict[tuple[int, int], tuple] = {
    (3, -1): (2, 41, 30, 1, (1, 12), lambda x, v: x * v),
    (3, 7): (2, 41, 216, 280, (4, 60), lambda x, v: (x + 3) * v),
}
UNIT_328 = (163, 9)


def p3_conic_family(a: int, b: int, count: int) -> list[tuple[int, int]]:
    """``(x, z)`` with ``z^2 = p_3(x) + p_3(a x + b)`` from the conic for ``(a, b)``."""
    c, al, be, ga, seed, zmap = P3_CONICS[(a, b)]
    conic = conic_to_pell(c, al, be, ga)
    p3 = product_poly(3)
    out = []
    for x, v in conic_solutions(conic, seed, UNIT_328, count):
        z = zmap(x, v)
        if z * z != p3(x) + p3(a * x + b):
            raise PellError(f"z^2 != p3(x) + p3({a}x+{b}) at x={x}")
        out.append((x, z))
    return out


def p3_neighbor_solutions(count: int) -> list[tuple[int, int]]:
    """``(x, z)`` with ``z^2 = p_3(x) + p_3(x+1)``, from ``v^2 - 2(x+2)^2 = -2``.

    The first entry is the degenerate ``x = -1, z = 0``.
    """
    if count < 1:
        raise ValueError("count must be positive")
    stream = PellStream(2, -2, (0, 1), (3, 2))
    p3 = product_poly(3)
    out = []
    for v, w in stream.take(count, include_seed=True):
        x = w - 2
        z = (x + 2) * v
        if z * z != p3(x) + p3(x + 1):
            raise PellError(f"z^2 != p3(x) + p3(x+1) at x={x}")
        out.append((x, z))
    return out


# -- Fibonacci family for p_4 -------------------------------------------------


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def lucas(n: int) -> int:
    return 2 * fibonacci(n + 1) - fibonacci(n)


def fibonacci_family(n: int) -> tuple[int, int]:
    """``(x, z) = (-5F_{6n}/2, 25F_{12n}/2)`` with ``z^2 = p_4(x) + p_4(-x)``."""
    if n < 1:
        raise ValueError("n must be positive")
    f6, f12 = fibonacci(6 * n), fibonacci(12 * n)
    x, z = -5 * f6 // 2, 25 * f12 // 2
    p4 = product_poly(4)
    if f6 % 2 or z * z != p4(x) + p4(-x) or z * z != 20 * x * x * (x * x + 5):
        raise PellError(f"Fibonacci family fails at n={n}")
    return x, z


def lucas_fibonacci_stream() -> PellStream:
    """``(L_{2m}, F_{2m})`` on ``v^2 - 5t^2 = 4``, advancing ``m`` by 3 per step."""
    return PellStream(5, 4, (3, 1), (9, 4))


# -- odd exponent family for p_1 ----------------------------------------------


def odd_m_family(m: int, t: int) -> tuple[int, int, int]:
    """``x = 2^((m-1)/2) t^m - 1, y = x + 1, z = 2t^2`` solving ``z^m = p_1(x) + p_1(y)``."""
    if m < 3 or m % 2 == 0:
        raise ValueError("m must be odd and at least 3")
    x = 2 ** ((m - 1) // 2) * t**m - 1
    y, z = x + 1, 2 * t * t
    p1 = product_poly(1)
    if z**m != p1(x) + p1(y):
        raise PellError(f"odd-m family fails at m={m}, t={t}")
    return x, y, z

