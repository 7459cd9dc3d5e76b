"""Compiled inner loops over uint64-packed vectors (n <= 64).

Every kernel releases the GIL so that index ranges can be processed on
worker threads.  Integer literals are cast to uint64 explicitly: numba
promotes mixed uint64/int64 arithmetic to float64.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U4 = np.uint64(4)
_U56 = np.uint64(56)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, nogil=True, inline="always")
def popcount64(x):
    x = x - ((x >> _U1) & _M1)
    x = (x & _M2) + ((x >> _U2) & _M2)
    x = (x + (x >> _U4)) & _M4
    return np.int64((x * _H01) >> _U56)


@njit(cache=True, nogil=True)
def weights_u64(cw):
    out = np.empty(cw.shape[0], dtype=np.int64)
    for j in range(cw.shape[0]):
        out[j] = popcount64(cw[j])
    return out


@njit(cache=True, nogil=True, inline="always")
def _passes(cw, wts, s, p, q):
    for j in range(1, cw.shape[0]):
        if q * popcount64(cw[j] & s) < p * wts[j]:
            return False
    return True


@njit(cache=True, nogil=True)
def first_violator(cw, wts, s, p, q):
    """Index of the first codeword with q*wt(c_S) < p*wt(c), or -1."""
    for j in range(1, cw.shape[0]):
        if q * popcount64(cw[j] & s) < p * wts[j]:
            return j
    return -1


@njit(cache=True, nogil=True)
def census_range(cw, wts, p, q, n, start, stop):
    """Histogram by |S| of passing subsets S = gray(i), start <= i < stop."""
    hist = np.zeros(n + 1, dtype=np.int64)
    for i in range(start, stop):
        s = np.uint64(i ^ (i >> 1))
        if _passes(cw, wts, s, p, q):
            hist[popcount64(s)] += 1
    return hist


@njit(cache=True, nogil=True)
def first_passing_of_size(cw, wts, n, size, p, q):
    """Lexicographically first size-``size`` subset that passes, as a mask; -1 if none."""
    if size > n:
        return np.int64(-1)
    idx = np.arange(size)
    while True:
        s = np.uint64(0)
        for t in range(size):
            s |= _U1 << np.uint64(idx[t])
        if _passes(cw, wts, s, p, q):
            return np.int64(s)
        t = size - 1
        while t >= 0 and idx[t] == n - size + t:
            t -= 1
        if t < 0:
            return np.int64(-1)
        idx[t] += 1
        for u in range(t + 1, size):
            idx[u] = idx[u - 1] + 1


@njit(cache=True, nogil=True)
def count_hits(cw, wts, samples, p, q):
    hits = 0
    for i in range(samples.shape[0]):
        if _passes(cw, wts, samples[i], p, q):
            hits += 1
    return hits


@njit(cache=True, nogil=True)
def first_proper_in_range(cw, wts, p, q, start, stop):
    """First i in [start, stop) with S = gray(i) satisfying
    q*wt(c_S) >= p*wt(c) and wt(c_S) < wt(c) for every nonzero codeword."""
    for i in range(start, stop):
        s = np.uint64(i ^ (i >> 1))
        ok = True
        for j in range(1, cw.shape[0]):
            w = popcount64(cw[j] & s)
            if w >= wts[j] or q * w < p * wts[j]:
                ok = False
                break
        if ok:
            return i
    return -1


@njit(cache=True, nogil=True)
def first_proper_in_samples(cw, wts, p, q, samples):
    for i in range(samples.shape[0]):
        s = samples[i]
        ok = True
        for j in range(1, cw.shape[0]):
            w = popcount64(cw[j] & s)
            if w >= wts[j] or q * w < p * wts[j]:
                ok = False
                break
        if ok:
            return i
    return -1
