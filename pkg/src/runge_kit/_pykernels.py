"""Pure-Python twins of the compiled kernels in ``_ckernels.pyx``.

Same inputs, same outputs, same ordering; only slower.
"""
from __future__ import annotations

from .exact import int_nth_root

SF_PRIME = 2147483647


def _gcd_deg(a: list[int], b: list[int], p: int) -> int:
    def strip(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = strip(a), strip(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            off = len(a) - 1 - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] - b[i] * c) % p
            strip(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def nonsquarefree_masks(n: int, prod_coeffs: list[list[int]]) -> list[int]:
    p = SF_PRIME
    d = n + 1
    P = [[(c % p) for c in cs] + [0] * (d + 1 - len(cs)) for cs in prod_coeffs]
    out = []
    for mask in range(1, 1 << n):
        g = list(P[n])
        for j in range(n):
            if mask >> j & 1:
                row = P[j]
                for i in range(j + 2):
                    g[i] = (g[i] + row[i]) % p
        dg = [g[i + 1] * (i + 1) % p for i in range(d)]
        if _gcd_deg(g, dg, p) >= 1:
            out.append(mask)
    return out


def power_candidates(coeffs, m, lo, hi, moduli, tables):
    oks = []
    for q, tab in zip(moduli, tables):
        cq = [c % q for c in coeffs]
        ok = bytearray(q)
        for r in range(q):
            acc = 0
            for c in reversed(cq):
                acc = (acc * r + c) % q
            ok[r] = tab[acc]
        oks.append(ok)
    pairs = list(zip(moduli, oks))
    out = []
    for x in range(lo, hi + 1):
        for q, ok in pairs:
            if not ok[x % q]:
                break
        else:
            out.append(x)
    return out


def _p(a: int, t: int) -> int:
    v = 1
    for i in range(a + 1):
        v *= t + i
    return v


def additive_pairs(a1, a2, m, x_lo, x_hi, bound, modulus, table):
    A = [0] + [_p(a1, t) for t in range(1, bound + 1)]
    B = [0] + [_p(a2, t) for t in range(1, bound + 1)]
    RA = [v % modulus for v in A]
    RB = [v % modulus for v in B]
    out = []
    for x in range(x_lo, x_hi):
        ax, rx = A[x], RA[x]
        for y in range(x, bound + 1):
            r = rx + RB[y]
            if r >= modulus:
                r -= modulus
            if not table[r]:
                continue
            z, ok = int_nth_root(ax + B[y], m)
            if ok:
                out.append((x, y, z))
    return out
