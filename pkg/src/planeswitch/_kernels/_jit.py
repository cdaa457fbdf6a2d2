"""numba kernels; same contracts as the numpy versions in ``_numpy``."""

from __future__ import annotations

import numpy as np
from numba import njit

SCAN_BITS = 62
KEY_SHIFT = 32
NO_KEY = np.iinfo(np.int64).max

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, nogil=True)
def _popcount(x):
    x = np.uint64(x)
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, nogil=True)
def _ctz(i):
    n = 0
    while (i & 1) == 0:
        i >>= 1
        n += 1
    return n


@njit(cache=True, nogil=True)
def _syndrome(v, cols):
    s = np.int64(0)
    b = 0
    while v:
        if v & 1:
            s ^= cols[b]
        v >>= 1
        b += 1
    return s


@njit(cache=True, nogil=True)
def _less(a, b):
    # numeric comparison of little-endian word vectors
    for w in range(a.shape[0] - 1, -1, -1):
        if a[w] != b[w]:
            return a[w] < b[w]
    return False


@njit(cache=True, nogil=True)
def sweep_keys(syn_cols, start, stop, nsyn):
    best = np.full(nsyn, NO_KEY, dtype=np.int64)
    if stop <= start:
        return best
    g = np.int64(start ^ (start >> 1))
    s = _syndrome(g, syn_cols)
    w = _popcount(g)
    for i in range(start, stop):
        if i > start:
            b = _ctz(i)
            g ^= np.int64(1) << b
            s ^= syn_cols[b]
            if (g >> b) & 1:
                w += 1
            else:
                w -= 1
        key = (w << KEY_SHIFT) | g
        if key < best[s]:
            best[s] = key
    return best


@njit(cache=True, nogil=True)
def bfs_leaders(syn_cols, nsyn, nwords):
    m = syn_cols.shape[0]
    dist = np.full(nsyn, -1, dtype=np.int16)
    leaders = np.zeros((nsyn, nwords), dtype=np.uint64)
    frontier = np.empty(nsyn, dtype=np.int64)
    nxt = np.empty(nsyn, dtype=np.int64)
    cand = np.empty(nwords, dtype=np.uint64)
    dist[0] = 0
    frontier[0] = 0
    nf = 1
    level = 0
    while nf:
        nn = 0
        for fi in range(nf):
            s = frontier[fi]
            for i in range(m):
                t = s ^ syn_cols[i]
                dt = dist[t]
                if dt != -1 and dt != level + 1:
                    continue
                for w in range(nwords):
                    cand[w] = leaders[s, w]
                cand[i >> 6] |= np.uint64(1) << np.uint64(i & 63)
                if dt == -1:
                    dist[t] = level + 1
                    nxt[nn] = t
                    nn += 1
                    for w in range(nwords):
                        leaders[t, w] = cand[w]
                elif _less(cand, leaders[t]):
                    for w in range(nwords):
                        leaders[t, w] = cand[w]
        frontier, nxt = nxt, frontier
        nf = nn
        level += 1
    return dist, leaders


@njit(cache=True, nogil=True)
def codeword_min(c, basis, start, stop):
    k, nwords = basis.shape
    cur = np.zeros(nwords, dtype=np.uint64)
    vec = np.empty(nwords, dtype=np.uint64)
    best = np.zeros(nwords, dtype=np.uint64)
    best_w = np.int64(-1)
    g = start ^ (start >> 1)
    for b in range(k):
        if (g >> b) & 1:
            for w in range(nwords):
                cur[w] ^= basis[b, w]
    for i in range(start, stop):
        if i > start:
            b = _ctz(i)
            for w in range(nwords):
                cur[w] ^= basis[b, w]
        wt = np.int64(0)
        for w in range(nwords):
            vec[w] = c[w] ^ cur[w]
            wt += _popcount(vec[w])
        if best_w < 0 or wt < best_w or (wt == best_w and _less(vec, best)):
            best_w = wt
            for w in range(nwords):
                best[w] = vec[w]
    return best_w, best


@njit(cache=True, nogil=True)
def _witness_scan(syn_cols, dist, weight, limit):
    m = syn_cols.shape[0]
    out = np.empty(limit, dtype=np.int64)
    n = 0
    if weight == 0:
        if dist[0] == 0 and limit > 0:
            out[0] = 0
            n = 1
        return out[:n]
    if weight > m:
        return out[:0]
    v = (np.int64(1) << weight) - 1
    top = np.int64(1) << m
    while v < top:
        if dist[_syndrome(v, syn_cols)] == weight:
            out[n] = v
            n += 1
            if n == limit:
                break
        low = v & -v
        r = v + low
        v = (((r ^ v) >> 2) // low) | r
    return out[:n]


def witness_scan(syn_cols, dist, weight, limit):
    if len(syn_cols) > SCAN_BITS:
        raise ValueError(f"vector scan limited to {SCAN_BITS} bits")
    return _witness_scan(syn_cols, dist, np.int64(weight), np.int64(limit))


@njit(cache=True, nogil=True)
def _max_capped_sets(ptr, idx, caps, m):
    occ = np.zeros(caps.shape[0], dtype=np.int64)
    state = np.zeros(m + 1, dtype=np.int8)
    included = np.zeros(m + 1, dtype=np.bool_)
    store = np.empty(64, dtype=np.int64)
    count = 0
    best = -1
    cur = 0
    mask = np.int64(0)
    i = 0
    while i >= 0:
        if i == m:
            if cur > best:
                best = cur
                count = 0
            if cur == best:
                if count == store.shape[0]:
                    bigger = np.empty(2 * count, dtype=np.int64)
                    bigger[:count] = store
                    store = bigger
                store[count] = mask
                count += 1
            i -= 1
            continue
        st = state[i]
        if st == 0:
            state[i] = 1
            ok = cur + m - i >= best
            if ok:
                for t in range(ptr[i], ptr[i + 1]):
                    if occ[idx[t]] >= caps[idx[t]]:
                        ok = False
                        break
            if ok:
                for t in range(ptr[i], ptr[i + 1]):
                    occ[idx[t]] += 1
                included[i] = True
                cur += 1
                mask |= np.int64(1) << i
                i += 1
                state[i] = 0
                continue
            st = 1
        if st == 1:
            if included[i]:
                for t in range(ptr[i], ptr[i + 1]):
                    occ[idx[t]] -= 1
                included[i] = False
                cur -= 1
                mask ^= np.int64(1) << i
            state[i] = 2
            if cur + m - i - 1 >= best:
                i += 1
                state[i] = 0
                continue
        i -= 1
    return best, np.sort(store[:count])


def max_capped_sets(ptr, idx, caps, m):
    if m > SCAN_BITS:
        raise ValueError(f"capped-set search limited to {SCAN_BITS} points")
    best, sets = _max_capped_sets(ptr, idx, caps, m)
    return int(best), [int(x) for x in sets]
