"""Exact worst-case analysis through the binary code spanned by the switches.

The configurations reachable from ``c`` form the coset ``c + C`` where C is
the GF(2) span of the line vectors, so the best reachable lit count is the
minimum weight in that coset and the worst case over all boards is the
covering radius of C.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._kernels import _numpy as _ref
from .game import Configuration, SwitchPlan
from .geometry import MAX_POINTS, IncidenceStructure

MAX_BITS = 28
MAX_WITNESSES = 16


def enumeration_cap() -> int:
    """The 28-bit enumeration cap, optionally lowered by PLANESWITCH_MAX_BITS."""
    env = os.environ.get("PLANESWITCH_MAX_BITS", "").strip()
    if env:
        return max(0, min(MAX_BITS, int(env)))
    return MAX_BITS


class SearchTooLarge(ValueError):
    def __init__(self, structure_id: str, m: int, k: int, cap: int, needs: str = "coset table"):
        self.structure_id, self.m, self.k, self.cap = structure_id, m, k, cap
        sizes = {"coset table": f"2^{m - k} cosets", "sweep": f"2^{m} configurations",
                 "codewords": f"2^{k} codewords and 2^{m - k} cosets"}[needs]
        super().__init__(
            f"{structure_id}: exact search refused; {m} points, switch-code rank {k}: "
            f"{sizes} exceed the 2^{cap} enumeration cap"
        )


def _to_words(x: int, nwords: int) -> np.ndarray:
    return np.array([(x >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nwords)], dtype=np.uint64)


def _from_words(words) -> int:
    return sum(int(w) << (64 * i) for i, w in enumerate(words))


# -- the switch code ----------------------------------------------------


@dataclass(eq=False)
class SwitchCode:
    structure_id: str
    m: int
    k: int
    basis: tuple[int, ...]  # reduced row echelon form, sorted by pivot
    pivot_columns: tuple[int, ...]
    line_masks: tuple[int, ...] = field(repr=False)
    combos: tuple[int, ...] = field(repr=False)  # lines summing to each basis row
    _table: "CosetTable | None" = field(default=None, repr=False)

    @property
    def redundancy(self) -> int:
        return self.m - self.k

    @property
    def nwords(self) -> int:
        return max(1, (self.m + 63) // 64)

    def syndrome_columns(self) -> np.ndarray:
        """Syndrome of each unit vector, packed into ``m - k`` bits."""
        r = self.redundancy
        if r > 62:
            raise ValueError(f"syndromes of {r} bits do not fit a machine word")
        free = [i for i in range(self.m) if i not in set(self.pivot_columns)]
        pos = {col: b for b, col in enumerate(free)}
        cols = np.zeros(self.m, dtype=np.int64)
        for col, b in pos.items():
            cols[col] = 1 << b
        for row, piv in zip(self.basis, self.pivot_columns):
            cols[piv] = sum(1 << b for col, b in pos.items() if row >> col & 1)
        return cols

    def reduce(self, bits: int) -> int:
        """Residue of ``bits`` modulo the code: its pivot columns cleared."""
        for row, piv in zip(self.basis, self.pivot_columns):
            if bits >> piv & 1:
                bits ^= row
        return bits

    def contains(self, bits: int) -> bool:
        return self.reduce(bits) == 0

    def plan_for(self, codeword: int) -> SwitchPlan:
        """Lines whose flips produce ``codeword``."""
        plan, acc = 0, 0
        for row, piv, combo in zip(self.basis, self.pivot_columns, self.combos):
            if codeword >> piv & 1:
                plan ^= combo
                acc ^= row
        if acc != codeword:
            raise ValueError("vector is not a combination of switches")
        return SwitchPlan(plan)


def switch_code(s: IncidenceStructure) -> SwitchCode:
    """Gauss-Jordan elimination of the line vectors over GF(2)."""
    m = s.num_points
    if m > MAX_POINTS:
        raise ValueError(f"{s.id}: {m} points exceeds cap {MAX_POINTS}")
    rows = [[mask, 1 << j] for j, mask in enumerate(s.line_masks)]
    pivots: list[int] = []
    r = 0
    for col in range(m):
        bit = 1 << col
        for i in range(r, len(rows)):
            if rows[i][0] & bit:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        pv, pc = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0] & bit:
                rows[i][0] ^= pv
                rows[i][1] ^= pc
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return SwitchCode(
        s.id,
        m,
        r,
        tuple(row[0] for row in rows[:r]),
        tuple(pivots),
        s.line_masks,
        tuple(row[1] for row in rows[:r]),
    )


# -- coset tables ---------------------------------------------------------


@dataclass(eq=False)
class CosetTable:
    """Leader weight and smallest leader for every syndrome."""

    syn_cols: np.ndarray
    dist: np.ndarray
    leaders: np.ndarray  # (2^(m-k), nwords) uint64
    method: str

    def syndrome(self, bits: int) -> int:
        s = 0
        cols = self.syn_cols
        while bits:
            low = bits & -bits
            s ^= int(cols[low.bit_length() - 1])
            bits ^= low
        return s

    def min_weight(self, bits: int) -> int:
        return int(self.dist[self.syndrome(bits)])

    def leader(self, bits: int) -> int:
        return _from_words(self.leaders[self.syndrome(bits)])


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(a, min(a + step, total)) for a in range(0, total, step)]


def _run_parts(fn, ranges, workers: int):
    if workers <= 1 or len(ranges) == 1:
        return [fn(a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), ranges))


def _parts(workers: int) -> int:
    return 1 if workers <= 1 else 4 * workers


def choose_method(code: SwitchCode, method: str = "auto") -> str:
    cap = enumeration_cap()
    m, r = code.m, code.redundancy
    if method == "auto":
        method = "sweep" if m <= cap else "bfs"
    if method == "sweep" and m > cap:
        raise SearchTooLarge(code.structure_id, m, code.k, cap, "sweep")
    if method == "bfs" and r > cap:
        raise SearchTooLarge(code.structure_id, m, code.k, cap)
    if method not in ("sweep", "bfs"):
        raise ValueError(f"unknown method {method!r}")
    return method


def coset_table(code: SwitchCode, method: str = "auto", workers: int = 1) -> CosetTable:
    """Exact coset-leader table.

    ``sweep`` visits all 2^m vectors in Gray-code order, split into
    contiguous index ranges whose partial minima merge elementwise;
    ``bfs`` expands syndromes outward from zero in order of weight.
    """
    method = choose_method(code, method)
    cols = code.syndrome_columns()
    nsyn = 1 << code.redundancy
    if method == "sweep":
        parts = _run_parts(
            lambda a, b: _kernels.sweep_keys(cols, a, b, nsyn),
            _ranges(1 << code.m, _parts(workers)),
            workers,
        )
        keys = np.minimum.reduce(parts) if len(parts) > 1 else parts[0]
        dist = (keys >> 32).astype(np.int16)
        leaders = (keys & 0xFFFFFFFF).astype(np.uint64).reshape(nsyn, 1)
    else:
        dist, leaders = _kernels.bfs_leaders(cols, nsyn, code.nwords)
    if (dist < 0).any():
        raise AssertionError("syndrome left unreached")
    table = CosetTable(cols, dist, leaders, method)
    if code._table is None:
        code._table = table
    return table


def _cached_table(code: SwitchCode) -> CosetTable:
    return code._table if code._table is not None else coset_table(code)


# -- queries -------------------------------------------------------------


def coset_min_weight(code: SwitchCode, c: Configuration, workers: int = 1) -> tuple[int, Configuration]:
    """Fewest lit bulbs reachable from ``c`` and the smallest configuration attaining it."""
    if c.structure_id != code.structure_id:
        raise ValueError(f"configuration is for {c.structure_id}, code for {code.structure_id}")
    cap = enumeration_cap()
    if code._table is not None or code.redundancy <= cap:
        table = _cached_table(code)
        return table.min_weight(c.bits), Configuration(c.board, table.leader(c.bits))
    if code.k > cap:
        raise SearchTooLarge(code.structure_id, code.m, code.k, cap, "codewords")
    nw = code.nwords
    basis = np.array([_to_words(row, nw) for row in code.basis], dtype=np.uint64).reshape(code.k, nw)
    cw = _to_words(c.bits, nw)
    results = _run_parts(
        lambda a, b: _kernels.codeword_min(cw, basis, a, b),
        _ranges(1 << code.k, _parts(workers)),
        workers,
    )
    w, vec = min(((int(w), _from_words(v)) for w, v in results))
    return w, Configuration(c.board, vec)


def _single_line_reduction(c: Configuration) -> int | None:
    for j, line in enumerate(c.board.lines):
        if 2 * (c.bits & c.board.line_masks[j]).bit_count() > len(line):
            return j
    return None


def is_reducible(c: Configuration, code: SwitchCode) -> bool:
    if _single_line_reduction(c) is not None:
        return True
    return coset_min_weight(code, c)[0] < c.lit_count


def find_reduction(c: Configuration, code: SwitchCode) -> SwitchPlan | None:
    """A plan that strictly lowers the lit count, or None if ``c`` is irreducible.

    A single switch is preferred when one suffices; otherwise the plan
    reaches the coset minimum.
    """
    j = _single_line_reduction(c)
    if j is not None:
        return SwitchPlan.of([j])
    w, best = coset_min_weight(code, c)
    if w >= c.lit_count:
        return None
    return code.plan_for(c.bits ^ best.bits)


# -- reports ---------------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class WorstCaseReport:
    structure_id: str
    num_points: int
    rank: int
    covering_radius: int
    spectrum: dict[int, int]  # leader weight -> number of cosets
    witnesses: list[Configuration]
    method: str

    @property
    def num_cosets(self) -> int:
        return 1 << (self.num_points - self.rank)

    def to_dict(self) -> dict:
        return {
            "structure": self.structure_id,
            "num_points": self.num_points,
            "rank": self.rank,
            "num_cosets": str(self.num_cosets),
            "covering_radius": self.covering_radius,
            "spectrum": [[w, str(n)] for w, n in sorted(self.spectrum.items())],
            "witnesses": [c.to_hex() for c in self.witnesses],
            "method": self.method,
        }

    def to_json(self) -> str:
        return _dumps(self.to_dict())

    def summary(self) -> str:
        lines = [
            f"structure        {self.structure_id}",
            f"points           {self.num_points}",
            f"switch rank      {self.rank}",
            f"cosets           {self.num_cosets}",
            f"covering radius  {self.covering_radius}",
            "spectrum         " + ", ".join(f"{w}:{n}" for w, n in sorted(self.spectrum.items())),
        ]
        for c in self.witnesses:
            lines.append(f"witness          {c.to_hex()}  lit={c.lit()}")
        return "\n".join(lines)


def _witnesses(table: CosetTable, m: int, weight: int, limit: int) -> list[int]:
    if m <= _kernels.SCAN_BITS:
        return [int(v) for v in _kernels.witness_scan(table.syn_cols, table.dist, weight, limit)]
    return _ref.witness_scan_py(table.syn_cols, table.dist, weight, limit)


def worst_case(
    s: IncidenceStructure,
    workers: int = 1,
    method: str = "auto",
    max_witnesses: int = MAX_WITNESSES,
) -> WorstCaseReport:
    """Covering radius, coset-leader spectrum and the smallest worst-case boards."""
    return _worst_case(s, workers, method, max_witnesses)[0]


def _worst_case(s, workers, method, max_witnesses):
    code = switch_code(s)
    table = coset_table(code, method, workers)
    radius = int(table.dist.max())
    counts = np.bincount(table.dist.astype(np.int64))
    spectrum = {w: int(n) for w, n in enumerate(counts) if n}
    wit = _witnesses(table, s.num_points, radius, max_witnesses)
    report = WorstCaseReport(
        s.id,
        s.num_points,
        code.k,
        radius,
        spectrum,
        [Configuration(s, v) for v in wit],
        table.method,
    )
    return report, table


@dataclass
class ConjectureReport:
    structure_id: str
    line_cap: int
    max_weight: int  # largest board with no line more than half lit
    num_maxima: int
    maxima_irreducible: bool
    reducible_maximum: Configuration | None
    covering_radius: int
    maxima_saturated: bool  # every extension of a maximum board is single-flip reducible
    witnesses_saturated: bool  # same, for the worst-case witnesses
    maxima: list[Configuration]
    witnesses: list[Configuration]

    @property
    def equals_covering_radius(self) -> bool:
        return self.max_weight == self.covering_radius

    @property
    def holds(self) -> bool:
        return self.maxima_irreducible and self.equals_covering_radius

    def to_dict(self) -> dict:
        return {
            "structure": self.structure_id,
            "line_cap": self.line_cap,
            "max_weight": self.max_weight,
            "num_maxima": str(self.num_maxima),
            "maxima_irreducible": self.maxima_irreducible,
            "reducible_maximum": None if self.reducible_maximum is None else self.reducible_maximum.to_hex(),
            "covering_radius": self.covering_radius,
            "equals_covering_radius": self.equals_covering_radius,
            "maxima_saturated": self.maxima_saturated,
            "witnesses_saturated": self.witnesses_saturated,
            "holds": self.holds,
            "maxima": [c.to_hex() for c in self.maxima],
            "witnesses": [c.to_hex() for c in self.witnesses],
        }

    def to_json(self) -> str:
        return _dumps(self.to_dict())

    def summary(self) -> str:
        yn = {True: "yes", False: "no"}
        out = [
            f"structure                 {self.structure_id}",
            f"max lit per line          {self.line_cap}",
            f"largest such board T      {self.max_weight} ({self.num_maxima} boards)",
            f"all maxima irreducible    {yn[self.maxima_irreducible]}",
            f"covering radius           {self.covering_radius}",
            f"T equals covering radius  {yn[self.equals_covering_radius]}",
            f"maxima saturated          {yn[self.maxima_saturated]}",
            f"witnesses saturated       {yn[self.witnesses_saturated]}",
            f"conjecture holds here     {yn[self.holds]}",
        ]
        if self.reducible_maximum is not None:
            out.append(f"reducible maximum         {self.reducible_maximum.to_hex()}")
        return "\n".join(out)


def _saturated(s: IncidenceStructure, bits: int) -> bool:
    """Lighting any dark bulb leaves some line more than half lit."""
    masks = s.line_masks
    for p in range(s.num_points):
        if bits >> p & 1:
            continue
        ext = bits | 1 << p
        if not any(2 * (ext & masks[j]).bit_count() > len(s.lines[j]) for j in s.lines_through[p]):
            return False
    return True


def capped_maxima(s: IncidenceStructure) -> tuple[int, list[int]]:
    """Largest boards with every line at most half lit, by backtracking."""
    caps = np.array([len(line) // 2 for line in s.lines], dtype=np.int64)
    ptr = np.zeros(s.num_points + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(t) for t in s.lines_through])
    idx = np.array([j for t in s.lines_through for j in t], dtype=np.int64)
    if s.num_points <= _kernels.SCAN_BITS:
        return _kernels.max_capped_sets(ptr, idx, caps, s.num_points)
    return _ref.max_capped_sets(ptr, idx, caps, s.num_points)


def conjecture_check(s: IncidenceStructure, workers: int = 1) -> ConjectureReport:
    if s.kind not in ("projective", "affine") or s.order % 2:
        raise ValueError(f"{s.id}: even order required")
    report, table = _worst_case(s, workers, "auto", MAX_WITNESSES)
    top, maxima = capped_maxima(s)
    reducible = next((v for v in maxima if table.min_weight(v) < top), None)
    return ConjectureReport(
        s.id,
        min(len(line) // 2 for line in s.lines),
        top,
        len(maxima),
        reducible is None,
        None if reducible is None else Configuration(s, reducible),
        report.covering_radius,
        all(_saturated(s, v) for v in maxima),
        all(_saturated(s, c.bits) for c in report.witnesses),
        [Configuration(s, v) for v in maxima[:MAX_WITNESSES]],
        report.witnesses,
    )
