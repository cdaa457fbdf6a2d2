"""Pure numpy/Python kernels. Reference path and numba-free fallback."""

from __future__ import annotations

import numpy as np

SCAN_BITS = 28  # witness_scan vectorises over integers below 2**SCAN_BITS
KEY_SHIFT = 32
CHUNK = 1 << 18
NO_KEY = np.iinfo(np.int64).max


def _subset_xor_table(cols: np.ndarray) -> np.ndarray:
    tab = np.zeros(1, dtype=np.int64)
    for c in cols:
        tab = np.concatenate([tab, tab ^ c])
    return tab


def _split_tables(cols: np.ndarray):
    lo_bits = min(len(cols), 14)
    return lo_bits, _subset_xor_table(cols[:lo_bits]), _subset_xor_table(cols[lo_bits:])


def _syndromes(v: np.ndarray, split) -> np.ndarray:
    lo_bits, lo, hi = split
    return lo[v & ((1 << lo_bits) - 1)] ^ hi[v >> lo_bits]


def sweep_keys(syn_cols: np.ndarray, start: int, stop: int, nsyn: int) -> np.ndarray:
    """Per syndrome, min of ``weight << 32 | v`` over v = gray(i), start <= i < stop."""
    best = np.full(nsyn, NO_KEY, dtype=np.int64)
    split = _split_tables(syn_cols)
    for a in range(start, stop, CHUNK):
        i = np.arange(a, min(a + CHUNK, stop), dtype=np.int64)
        v = i ^ (i >> 1)
        keys = (np.bitwise_count(v).astype(np.int64) << KEY_SHIFT) | v
        np.minimum.at(best, _syndromes(v, split), keys)
    return best


def bfs_leaders(syn_cols: np.ndarray, nsyn: int, nwords: int):
    """Breadth-first search over syndromes; generators are the unit-vector syndromes.

    Returns ``(dist, leaders)``: the coset-leader weight of every syndrome and
    the numerically smallest leader, as little-endian uint64 words.
    """
    m = len(syn_cols)
    dist = np.full(nsyn, -1, dtype=np.int16)
    leaders = np.zeros((nsyn, nwords), dtype=np.uint64)
    unit = np.zeros((m, nwords), dtype=np.uint64)
    for i in range(m):
        unit[i, i >> 6] = np.uint64(1) << np.uint64(i & 63)

    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    level = 0
    while frontier.size:
        targets = (frontier[:, None] ^ syn_cols[None, :]).ravel()
        src = np.repeat(frontier, m)
        bit = np.tile(np.arange(m), frontier.size)
        fresh = dist[targets] == -1
        targets, src, bit = targets[fresh], src[fresh], bit[fresh]
        if not targets.size:
            break
        cand = leaders[src] | unit[bit]
        order = np.lexsort(tuple(cand[:, w] for w in range(nwords)) + (targets,))
        ts = targets[order]
        first = np.ones(ts.size, dtype=bool)
        first[1:] = ts[1:] != ts[:-1]
        pick = order[first]
        level += 1
        dist[targets[pick]] = level
        leaders[targets[pick]] = cand[pick]
        frontier = targets[pick]
    return dist, leaders


def _lex_first(weights: np.ndarray, vecs: np.ndarray) -> int:
    keys = tuple(vecs[:, w] for w in range(vecs.shape[1])) + (weights,)
    return int(np.lexsort(keys)[0])


def codeword_min(c: np.ndarray, basis: np.ndarray, start: int, stop: int):
    """Min ``(weight, vector)`` of ``c ^ w`` over codewords w = span(basis)[gray(i)]."""
    k, nwords = basis.shape
    best_w, best = None, None
    for a in range(start, stop, CHUNK):
        i = np.arange(a, min(a + CHUNK, stop), dtype=np.int64)
        g = i ^ (i >> 1)
        vecs = np.broadcast_to(c, (i.size, nwords)).copy()
        for b in range(k):
            sel = ((g >> b) & 1).astype(bool)
            vecs[sel] ^= basis[b]
        weights = np.bitwise_count(vecs).sum(axis=1, dtype=np.int64)
        j = _lex_first(weights, vecs)
        w, v = int(weights[j]), vecs[j].copy()
        if best is None or (w, tuple(v[::-1])) < (best_w, tuple(best[::-1])):
            best_w, best = w, v
    return best_w, best


def witness_scan(syn_cols: np.ndarray, dist: np.ndarray, weight: int, limit: int) -> np.ndarray:
    """Smallest ``limit`` vectors of the given weight lying in cosets of leader weight ``weight``."""
    m = len(syn_cols)
    if m > SCAN_BITS:
        raise ValueError(f"vector scan limited to {SCAN_BITS} bits")
    split = _split_tables(syn_cols)
    found = []
    for a in range(0, 1 << m, CHUNK):
        v = np.arange(a, min(a + CHUNK, 1 << m), dtype=np.int64)
        v = v[np.bitwise_count(v) == weight]
        hit = v[dist[_syndromes(v, split)] == weight]
        found.extend(hit[: limit - len(found)].tolist())
        if len(found) >= limit:
            break
    return np.array(found, dtype=np.int64)


def witness_scan_py(syn_cols, dist, weight: int, limit: int) -> list[int]:
    """Gosper-order scan on Python ints; any length."""
    m = len(syn_cols)
    if weight == 0:
        return [0] if dist[0] == 0 else []
    if weight > m:
        return []
    cols = [int(x) for x in syn_cols]
    out: list[int] = []
    v = (1 << weight) - 1
    while v >> m == 0:
        s, b = 0, v
        while b:
            low = b & -b
            s ^= cols[low.bit_length() - 1]
            b ^= low
        if dist[s] == weight:
            out.append(v)
            if len(out) == limit:
                break
        low = v & -v
        r = v + low
        v = (((r ^ v) >> 2) // low) | r
    return out


def max_capped_sets(ptr: np.ndarray, idx: np.ndarray, caps: np.ndarray, m: int):
    """All maximum point sets meeting line j in at most caps[j] points.

    ``ptr``/``idx`` is the CSR list of lines through each point.
    """
    occ = [0] * len(caps)
    through = [idx[ptr[p] : ptr[p + 1]].tolist() for p in range(m)]
    caps = caps.tolist()
    best = -1
    found: list[int] = []

    def rec(i, cur, mask):
        nonlocal best, found
        if i == m:
            if cur > best:
                best, found = cur, []
            if cur == best:
                found.append(mask)
            return
        if cur + m - i >= best and all(occ[j] < caps[j] for j in through[i]):
            for j in through[i]:
                occ[j] += 1
            rec(i + 1, cur + 1, mask | 1 << i)
            for j in through[i]:
                occ[j] -= 1
        if cur + m - i - 1 >= best:
            rec(i + 1, cur, mask)

    rec(0, 0, 0)
    return best, sorted(found)
