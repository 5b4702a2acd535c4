"""Hot inner loops, backed by the compiled extension when it is importable.

Set ``RUNGE_KIT_PURE=1`` to force the pure-Python implementation. Both
backends return identical results; ``BACKEND`` names the active one.
"""
from __future__ import annotations

import math
import os
from functools import lru_cache

from . import _pykernels
from .exact import Poly

_pure = os.environ.get("RUNGE_KIT_PURE", "").strip() not in ("", "0")
try:
    if _pure:
        raise ImportError("pure backend requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

# 128-bit headroom for the compiled additive scan
_ADDITIVE_LIMIT = 1 << 126
# intervals shorter than this are evaluated directly
_SIEVE_MIN_SPAN = 64


def _prime_powers(limit: int) -> list[int]:
    ps = [p for p in range(2, limit) if all(p % q for q in range(2, math.isqrt(p) + 1))]
    out = []
    for p in ps:
        q = p
        while q < limit:
            out.append(q)
            q *= p
    return sorted(out)


@lru_cache(maxsize=None)
def power_residues(q: int, m: int) -> bytes:
    """Flags of the m-th power residues modulo ``q`` (0 included)."""
    tab = bytearray(q)
    for r in range(q):
        tab[pow(r, m, q)] = 1
    return bytes(tab)


@lru_cache(maxsize=None)
def sieve_moduli(m: int, count: int = 24) -> tuple[int, ...]:
    """Pairwise coprime moduli whose m-th power residues are sparsest, best first."""
    scored = []
    for q in _prime_powers(400):
        dens = sum(power_residues(q, m)) / q
        if dens < 1:
            scored.append((dens, q))
    scored.sort()
    chosen: list[int] = []
    for _, q in scored:
        if all(math.gcd(q, c) == 1 for c in chosen):
            chosen.append(q)
        if len(chosen) == count:
            break
    return tuple(chosen)


@lru_cache(maxsize=None)
def combined_table(m: int, limit: int = 1 << 22) -> tuple[int, bytes]:
    """One modulus (product of the best coprime moduli, below ``limit``) and its residue flags."""
    mods = []
    M = 1
    for q in sieve_moduli(m):
        if M * q <= limit:
            mods.append(q)
            M *= q
    tab = bytearray(b"\x01") * M
    for q in mods:
        res = power_residues(q, m)
        bad = [r for r in range(q) if not res[r]]
        for r in bad:
            tab[r::q] = bytes(len(range(r, M, q)))
    return M, bytes(tab)


def nonsquarefree_masks(n: int) -> list[int]:
    """Tuple masks (bit ``i`` set iff ``i`` in ``T``) where ``g_T`` fails a modular square-free test.

    A monic polynomial that is square-free modulo a prime is square-free over
    the rationals, so unflagged masks are certified; flagged ones still need
    an exact check.
    """
    from .family import product_poly

    coeffs = [list(product_poly(a).coeffs) for a in range(n + 1)]
    return _impl.nonsquarefree_masks(n, coeffs)


def power_candidates(f: Poly, m: int, lo: int, hi: int) -> list[int]:
    """x in ``[lo, hi]`` that survive the m-th power residue sieve for ``f(x)``.

    Never drops an x with ``f(x)`` a perfect m-th power (of either sign).
    """
    if hi < lo:
        return []
    if hi - lo < _SIEVE_MIN_SPAN or not (-(1 << 62) < lo and hi < (1 << 62)):
        return list(range(lo, hi + 1))
    mods = list(sieve_moduli(m, 12))
    tables = [power_residues(q, m) for q in mods]
    return _impl.power_candidates(list(f.coeffs), m, lo, hi, mods, tables)


def _p(a: int, t: int) -> int:
    v = 1
    for i in range(a + 1):
        v *= t + i
    return v


def additive_pairs(a1: int, a2: int, m: int, x_lo: int, x_hi: int, bound: int) -> list[tuple[int, int, int]]:
    """``(x, y, z)`` with ``x_lo <= x < x_hi``, ``x <= y <= bound`` and ``p_a1(x) + p_a2(y) = z^m``."""
    x_hi = min(x_hi, bound + 1)
    if x_hi <= x_lo:
        return []
    M, table = combined_table(m)
    impl = _impl
    if _p(a1, bound) + _p(a2, bound) >= _ADDITIVE_LIMIT:
        impl = _pykernels
    return impl.additive_pairs(a1, a2, m, x_lo, x_hi, bound, M, table)

