"""Brute-force references that share no code with the search module."""

import numpy as np


def span(masks):
    """Every XOR combination of the given bitmasks."""
    out = {0}
    for m in masks:
        if m not in out:
            out |= {x ^ m for x in out}
    return sorted(out)


def brute_rank(masks):
    return len(span(masks)).bit_length() - 1


def brute_coset_min(bits, masks):
    return min((bits ^ w).bit_count() for w in span(masks))


def brute_spectrum(num_points, masks, chunk=1 << 12):
    """Coset-leader spectrum by scanning every vector against every codeword."""
    code = np.array(span(masks), dtype=np.int64)
    m = num_points
    leader = {}
    for a in range(0, 1 << m, chunk):
        v = np.arange(a, min(a + chunk, 1 << m), dtype=np.int64)
        w = np.bitwise_count(v[:, None] ^ code[None, :]).min(axis=1)
        # canonical coset representative: smallest element of v + code
        rep = (v[:, None] ^ code[None, :]).min(axis=1)
        for r, x in zip(rep.tolist(), w.tolist()):
            leader[r] = x
    counts = {}
    for x in leader.values():
        counts[x] = counts.get(x, 0) + 1
    return dict(sorted(counts.items()))


def reachable(bits, masks):
    """Configurations reachable by single toggles, by breadth-first search."""
    seen = {bits}
    todo = [bits]
    while todo:
        x = todo.pop()
        for m in masks:
            y = x ^ m
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen
