# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Semantics mirror ``_pykernels`` exactly."""

from libc.stdint cimport int64_t, uint64_t, uint8_t, uint32_t
from libc.stdlib cimport malloc, free
from libc.math cimport sqrtl, cbrtl, powl

cdef extern from *:
    """
    typedef unsigned __int128 u128;
    """
    ctypedef unsigned long long u128

cdef uint64_t SF_PRIME = 2147483647ULL


cdef inline uint64_t _inv(uint64_t a, uint64_t p) nogil:
    cdef uint64_t r = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


cdef int _gcd_deg(uint64_t* a, int da, uint64_t* b, int db, uint64_t p) nogil:
    """Degree of gcd over GF(p); destroys both buffers. -1 means both zero."""
    cdef uint64_t* t
    cdef int dt, i, off
    cdef uint64_t inv, c
    while da >= 0 and a[da] == 0:
        da -= 1
    while db >= 0 and b[db] == 0:
        db -= 1
    while db >= 0:
        inv = _inv(b[db], p)
        while da >= db:
            c = a[da] * inv % p
            off = da - db
            for i in range(db + 1):
                a[off + i] = (a[off + i] + (p - b[i]) * c) % p
            while da >= 0 and a[da] == 0:
                da -= 1
        t = a; a = b; b = t
        dt = da; da = db; db = dt
    return da


def nonsquarefree_masks(int n, list prod_coeffs):
    """Masks T (bit i <-> i in T) whose g_T is not square-free modulo 2^31-1.

    ``prod_coeffs[a]`` holds the integer coefficients of p_a, a = 0..n.
    """
    cdef int d = n + 1, a, i, j
    cdef uint64_t p = SF_PRIME
    cdef uint64_t* P = <uint64_t*> malloc((n + 1) * (d + 1) * sizeof(uint64_t))
    cdef uint64_t* g = <uint64_t*> malloc((d + 1) * sizeof(uint64_t))
    cdef uint64_t* dg = <uint64_t*> malloc((d + 1) * sizeof(uint64_t))
    cdef uint64_t mask, nmask = (<uint64_t> 1) << n
    out = []
    try:
        for a in range(n + 1):
            cs = prod_coeffs[a]
            for i in range(d + 1):
                P[a * (d + 1) + i] = (cs[i] % 2147483647) if i < len(cs) else 0
        for mask in range(1, nmask):
            for i in range(d + 1):
                g[i] = P[n * (d + 1) + i]
            for j in range(n):
                if (mask >> j) & 1:
                    for i in range(j + 2):
                        g[i] = (g[i] + P[j * (d + 1) + i]) % p
            for i in range(d):
                dg[i] = g[i + 1] * <uint64_t> (i + 1) % p
            if _gcd_deg(g, d, dg, d - 1, p) >= 1:
                out.append(mask)
    finally:
        free(P); free(g); free(dg)
    return out


def power_candidates(list coeffs, int m, int64_t lo, int64_t hi, list moduli, list tables):
    """x in [lo, hi] for which f(x) is an m-th power modulo every modulus.

    ``tables[j]`` is a bytes object of length ``moduli[j]`` flagging m-th power residues.
    """
    cdef int nm = len(moduli), j
    cdef int64_t x, span
    cdef uint32_t* mods = <uint32_t*> malloc(nm * sizeof(uint32_t))
    cdef uint32_t* pos = <uint32_t*> malloc(nm * sizeof(uint32_t))
    cdef uint8_t** ok = <uint8_t**> malloc(nm * sizeof(uint8_t*))
    cdef uint8_t* buf
    cdef bint good
    cdef int64_t r
    out = []
    for j in range(nm):
        ok[j] = NULL
    try:
        for j in range(nm):
            q = moduli[j]
            mods[j] = q
            tab = tables[j]
            cq = [c % q for c in coeffs]
            buf = <uint8_t*> malloc(q)
            ok[j] = buf
            for r in range(q):
                acc = 0
                for c in reversed(cq):
                    acc = (acc * r + c) % q
                buf[r] = tab[acc]
            pos[j] = <uint32_t> (((lo % <int64_t> mods[j]) + <int64_t> mods[j]) % <int64_t> mods[j])
        span = hi - lo
        for x in range(span + 1):
            good = True
            for j in range(nm):
                if not ok[j][pos[j]]:
                    good = False
                    break
            if good:
                out.append(lo + x)
            for j in range(nm):
                pos[j] += 1
                if pos[j] == mods[j]:
                    pos[j] = 0
    finally:
        for j in range(nm):
            if ok[j] != NULL:
                free(ok[j])
        free(mods); free(pos); free(ok)
    return out


cdef inline u128 _pow_sat(u128 r, int m, u128 cap) nogil:
    """r**m, saturating at cap + 1."""
    cdef u128 acc = 1
    cdef int i
    for i in range(m):
        if r != 0 and acc > cap / r:
            return cap + 1
        acc *= r
    return acc


cdef inline int _exact_root(u128 s, int m, u128* root) nogil:
    cdef long double v = <long double> s
    cdef long double est
    cdef u128 r, cap = ~(<u128> 0) - 1
    if m == 2:
        est = sqrtl(v)
    elif m == 3:
        est = cbrtl(v)
    else:
        est = powl(v, (<long double> 1.0) / m)
    r = <u128> est
    while r > 0 and _pow_sat(r, m, cap) > s:
        r -= 1
    while _pow_sat(r + 1, m, cap) <= s:
        r += 1
    root[0] = r
    return _pow_sat(r, m, cap) == s


def additive_pairs(int a1, int a2, int m, int64_t x_lo, int64_t x_hi, int64_t bound,
                   int modulus, bytes table):
    """(x, y, z) with x_lo <= x < x_hi, x <= y <= bound, p_a1(x) + p_a2(y) = z**m.

    Requires p_a1(bound) + p_a2(bound) < 2**126 (checked by the caller).
    ``table`` flags the residues mod ``modulus`` that are m-th powers.
    """
    cdef int64_t n = bound
    cdef u128* A = <u128*> malloc((n + 1) * sizeof(u128))
    cdef u128* B = <u128*> malloc((n + 1) * sizeof(u128))
    cdef uint32_t* RA = <uint32_t*> malloc((n + 1) * sizeof(uint32_t))
    cdef uint32_t* RB = <uint32_t*> malloc((n + 1) * sizeof(uint32_t))
    cdef const uint8_t* tab = table
    cdef uint32_t M = modulus, r
    cdef int64_t x, y, t
    cdef int i
    cdef u128 v, s, root
    out = []
    try:
        for t in range(1, n + 1):
            v = 1
            for i in range(a1 + 1):
                v *= <u128> (t + i)
            A[t] = v
            RA[t] = <uint32_t> (v % M)
            v = 1
            for i in range(a2 + 1):
                v *= <u128> (t + i)
            B[t] = v
            RB[t] = <uint32_t> (v % M)
        for x in range(x_lo, x_hi):
            for y in range(x, n + 1):
                r = RA[x] + RB[y]
                if r >= M:
                    r -= M
                if not tab[r]:
                    continue
                s = A[x] + B[y]
                if _exact_root(s, m, &root):
                    out.append((x, y, ((<object> (<uint64_t> (root >> 64))) << 64) | (<object> (<uint64_t> root))))
    finally:
        free(A); free(B); free(RA); free(RB)
    return out
