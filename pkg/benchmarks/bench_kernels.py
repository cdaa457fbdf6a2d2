"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from planeswitch import build
from planeswitch._kernels import _numpy
from planeswitch.search import switch_code

try:
    from planeswitch._kernels import _jit
except ImportError:
    _jit = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    g5 = switch_code(build("grid", n=5))
    cols5 = g5.syndrome_columns()
    nsyn5 = 1 << g5.redundancy
    yield "sweep grid(5), 2^25 vectors", lambda k: k.sweep_keys(cols5, 0, 1 << 25, nsyn5)
    yield "bfs grid(5), 2^16 syndromes", lambda k: k.bfs_leaders(cols5, nsyn5, 1)

    g10 = switch_code(build("grid", n=10))
    basis = np.array([[r & (2**64 - 1), r >> 64] for r in g10.basis], dtype=np.uint64)
    c = np.array([0x0123456789ABCDEF, 0xF], dtype=np.uint64)
    yield "codewords grid(10), 2^19 words", lambda k: k.codeword_min(c, basis, 0, 1 << g10.k)

    pg4 = switch_code(build("projective", 4))
    cols4 = pg4.syndrome_columns()
    dist, _ = _numpy.bfs_leaders(cols4, 1 << pg4.redundancy, 1)
    yield "witness scan PG(2,4), weight 6", lambda k: k.witness_scan(cols4, dist, 6, 16)

    board = build("projective", 4)
    caps = np.array([2] * board.num_lines, dtype=np.int64)
    ptr = np.zeros(board.num_points + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(t) for t in board.lines_through])
    idx = np.array([j for t in board.lines_through for j in t], dtype=np.int64)
    yield "capped maxima PG(2,4)", lambda k: k.max_capped_sets(ptr, idx, caps, board.num_points)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':<34}{'numpy':>10}{'numba':>10}{'speedup':>9}")
    for name, call in cases():
        t_np = best_of(lambda: call(_numpy), args.repeat)
        if _jit is None:
            print(f"{name:<34}{t_np:>10.4f}{'n/a':>10}")
            continue
        call(_jit)  # compile
        t_nb = best_of(lambda: call(_jit), args.repeat)
        print(f"{name:<34}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
