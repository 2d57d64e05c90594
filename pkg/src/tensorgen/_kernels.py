"""Compiled GF(p) kernels.

All arrays are int64 with entries in [0, p). Products stay below p**2, so
p must be below 2**31; callers check that.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_KERNEL_PRIME = 2**31 - 1


@njit(cache=True)
def _inv_mod(a, p):
    res = 1
    e = p - 2
    base = a % p
    while e > 0:
        if e & 1:
            res = (res * base) % p
        base = (base * base) % p
        e >>= 1
    return res


@njit(cache=True)
def _lucas(n, k, p):
    if k < 0 or k > n:
        return 0
    res = 1
    while k > 0:
        a = n % p
        b = k % p
        if b > a:
            return 0
        num = 1
        den = 1
        for j in range(b):
            num = (num * (a - j)) % p
            den = (den * (j + 1)) % p
        res = (res * num) % p
        res = (res * _inv_mod(den, p)) % p
        n //= p
        k //= p
    return res


@njit(cache=True)
def _eliminate(M, p, npiv):
    """Forward elimination in place on the first ``npiv`` columns; returns rank."""
    rows, cols = M.shape
    rank = 0
    for c in range(npiv):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = M[rank, j]
                M[rank, j] = M[piv, j]
                M[piv, j] = tmp
        inv = _inv_mod(M[rank, c], p)
        for j in range(c, cols):
            M[rank, j] = (M[rank, j] * inv) % p
        for r in range(rank + 1, rows):
            f = M[r, c]
            if f != 0:
                for j in range(c, cols):
                    M[r, j] = (M[r, j] - f * M[rank, j]) % p
        rank += 1
    return rank


@njit(cache=True)
def rank_mod_p(M, p):
    W = M.copy()
    return _eliminate(W, p, W.shape[1])


@njit(cache=True)
def det_mod_p(M, p):
    W = M.copy()
    n = W.shape[0]
    det = 1
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if W[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for j in range(n):
                tmp = W[c, j]
                W[c, j] = W[piv, j]
                W[piv, j] = tmp
            det = (p - det) % p
        det = (det * W[c, c]) % p
        inv = _inv_mod(W[c, c], p)
        for r in range(c + 1, n):
            f = (W[r, c] * inv) % p
            if f != 0:
                for j in range(c, n):
                    W[r, j] = (W[r, j] - f * W[c, j]) % p
    return det


@njit(cache=True)
def _kernel_vector_in_image(m, n, p, i, r):
    # Is x_i in N^r(D_{i+r})?  Rows index D_i by first coordinate 1..i,
    # columns index D_{i+r} by first coordinate lo..hi; last column is x_i.
    s = i + r
    lo = max(1, s + 1 - n)
    hi = min(m, s)
    if lo > hi:
        return False
    w = hi - lo + 1
    M = np.zeros((i, w + 1), dtype=np.int64)
    for a2 in range(1, i + 1):
        for c in range(w):
            M[a2 - 1, c] = _lucas(r, a2 - (lo + c) + r, p)
        M[a2 - 1, w] = 1 if a2 % 2 == 1 else p - 1
    rk = _eliminate(M, p, w)
    for rr in range(rk, i):
        if M[rr, w] != 0:
            return False
    return True


@njit(cache=True)
def graded_kernel_heights(m, n, p):
    """For each kernel vector x_i, the largest r with x_i in im N^r.

    The grid operator is graded by diagonals and ker N is spanned by
    x_1..x_m (one per diagonal), so the number of Jordan blocks longer than
    r equals #{i : height_i >= r}.  Membership is monotone in r, hence the
    binary search.
    """
    top = m + n - 1
    out = np.zeros(m, dtype=np.int64)
    for i in range(1, m + 1):
        lo = 0
        hi = top - i
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if _kernel_vector_in_image(m, n, p, i, mid):
                lo = mid
            else:
                hi = mid - 1
        out[i - 1] = lo
    return out


@njit(cache=True)
def grid_N_rank(m, n, p):
    """Rank of N on the full grid, diagonal by diagonal."""
    total = 0
    for d in range(2, m + n):
        # N maps D_d (first coord lo..hi) into D_{d-1}
        lo = max(1, d + 1 - n)
        hi = min(m, d)
        lo2 = max(1, d - n)
        hi2 = min(m, d - 1)
        if lo2 > hi2:
            continue
        M = np.zeros((hi2 - lo2 + 1, hi - lo + 1), dtype=np.int64)
        for c in range(hi - lo + 1):
            a = lo + c
            b = d + 1 - a
            # f_{a,b} -> f_{a-1,b} + f_{a,b-1}
            if a - 1 >= lo2 and a - 1 <= hi2:
                M[a - 1 - lo2, c] = (M[a - 1 - lo2, c] + 1) % p
            if b - 1 >= 1 and a >= lo2 and a <= hi2:
                M[a - lo2, c] = (M[a - lo2, c] + 1) % p
        total += _eliminate(M, p, M.shape[1])
    return total
