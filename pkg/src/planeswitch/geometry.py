"""Incidence structures used as game boards.

Points are integers ``0..num_points-1``; each line is a sorted tuple of
point indices and doubles as a switch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .gf import FiniteField, field_of_order

MAX_POINTS = 4096
MAX_GRID = 32


@dataclass(frozen=True, eq=False)
class IncidenceStructure:
    kind: str  # "grid", "projective", "affine" or "custom"
    num_points: int
    lines: tuple[tuple[int, ...], ...]
    point_labels: tuple[str, ...] = ()
    order: int | None = None
    dimension: int = 2
    n: int | None = None
    parallel_class_of: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def id(self) -> str:
        if self.kind == "grid":
            return f"grid({self.n})"
        if self.kind == "projective":
            return f"PG({self.dimension},{self.order})"
        if self.kind == "affine":
            return f"AG({self.dimension},{self.order})"
        return f"custom({self.num_points},{len(self.lines)})"

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def line_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << p for p in line) for line in self.lines)

    @cached_property
    def lines_through(self) -> tuple[tuple[int, ...], ...]:
        acc: list[list[int]] = [[] for _ in range(self.num_points)]
        for j, line in enumerate(self.lines):
            for p in line:
                acc[p].append(j)
        return tuple(tuple(x) for x in acc)

    @cached_property
    def incidence_matrix(self) -> np.ndarray:
        """Dense ``num_lines x num_points`` 0/1 matrix."""
        mat = np.zeros((self.num_lines, self.num_points), dtype=np.uint8)
        for j, line in enumerate(self.lines):
            mat[j, list(line)] = 1
        return mat

    def all_lines_even(self) -> bool:
        return all(len(line) % 2 == 0 for line in self.lines)

    def line_through(self, a: int, b: int) -> int:
        """Index of the first line containing both points."""
        mb = 1 << b
        masks = self.line_masks
        for j in self.lines_through[a]:
            if masks[j] & mb:
                return j
        raise ValueError(f"points {a} and {b} share no line")

    def __repr__(self) -> str:
        return f"<IncidenceStructure {self.id}: {self.num_points} points, {self.num_lines} lines>"


# -- construction ----------------------------------------------------------


def grid_board(n: int) -> IncidenceStructure:
    """The n x n board: rows then columns, points row-major."""
    if not 1 <= n <= MAX_GRID:
        raise ValueError(f"grid side must be in [1, {MAX_GRID}], got {n}")
    rows = [tuple(r * n + c for c in range(n)) for r in range(n)]
    cols = [tuple(r * n + c for r in range(n)) for c in range(n)]
    labels = tuple(f"({r},{c})" for r in range(n) for c in range(n))
    return IncidenceStructure("grid", n * n, tuple(rows + cols), labels, n=n)


def _check_dimension(d: int) -> None:
    if d < 2 or d % 2:
        raise ValueError(f"dimension must be 2 or an even integer > 2, got {d}")


def _projective_count(q: int, d: int) -> int:
    return (q ** (d + 1) - 1) // (q - 1)


def _canonical_points(f: FiniteField, d: int) -> list[tuple[int, ...]]:
    # first nonzero coordinate is 1; lexicographic order
    q = f.q
    pts = []

    def rec(prefix, seen_nonzero):
        if len(prefix) == d + 1:
            if seen_nonzero:
                pts.append(tuple(prefix))
            return
        choices = range(q) if seen_nonzero else (0, 1)
        for x in choices:
            rec(prefix + [x], seen_nonzero or x != 0)

    rec([], False)
    return pts


def _projective_lines(f: FiniteField, pts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    add, mul, inv = f.add_table, f.mul_table, f.inv_table
    index = {p: i for i, p in enumerate(pts)}
    m = len(pts)
    joined = np.zeros((m, m), dtype=bool)
    lines = []
    for i in range(m):
        u = pts[i]
        for j in range(i + 1, m):
            if joined[i, j]:
                continue
            v = pts[j]
            members = [i, j]
            for t in range(1, f.q):
                w = [int(add[mul[t, a], b]) for a, b in zip(u, v)]
                lead = next(x for x in w if x)
                s = inv[lead]
                members.append(index[tuple(int(mul[s, x]) for x in w)])
            line = tuple(sorted(members))
            ix = np.array(line)
            joined[np.ix_(ix, ix)] = True
            lines.append(line)
    lines.sort()
    return lines


def _label(coords) -> str:
    return "(" + ",".join(str(x) for x in coords) + ")"


def projective_space(field: FiniteField, d: int = 2) -> IncidenceStructure:
    """PG(d, q): points are 1-dim subspaces, switches are the lines."""
    _check_dimension(d)
    m = _projective_count(field.q, d)
    if m > MAX_POINTS:
        raise ValueError(f"PG({d},{field.q}) has {m} points, cap is {MAX_POINTS}")
    pts = _canonical_points(field, d)
    lines = _projective_lines(field, pts)
    return IncidenceStructure(
        "projective",
        len(pts),
        tuple(lines),
        tuple(_label(p) for p in pts),
        order=field.q,
        dimension=d,
    )


def affine_space(field: FiniteField, d: int = 2) -> IncidenceStructure:
    """AG(d, q) obtained from PG(d, q) by deleting the hyperplane x0 = 0."""
    _check_dimension(d)
    q = field.q
    if q**d > MAX_POINTS:
        raise ValueError(f"AG({d},{q}) has {q ** d} points, cap is {MAX_POINTS}")
    pts = _canonical_points(field, d)
    lines = _projective_lines(field, pts)

    keep = [i for i, p in enumerate(pts) if p[0] != 0]
    new_index = {old: new for new, old in enumerate(keep)}
    kept_lines = []
    for line in lines:
        finite = tuple(new_index[p] for p in line if p in new_index)
        if not finite:
            continue
        # every affine line meets infinity in exactly one point: its direction
        (direction,) = [p for p in line if p not in new_index]
        kept_lines.append((finite, direction))
    kept_lines.sort()

    directions = sorted({dirn for _, dirn in kept_lines})
    class_index = {dirn: c for c, dirn in enumerate(directions)}
    return IncidenceStructure(
        "affine",
        len(keep),
        tuple(line for line, _ in kept_lines),
        tuple(_label(pts[i][1:]) for i in keep),
        order=q,
        dimension=d,
        parallel_class_of=tuple(class_index[dirn] for _, dirn in kept_lines),
    )


def build(kind: str, order: int | None = None, dimension: int = 2, n: int | None = None):
    """Construct a board by name; ``order`` is the field order q."""
    if kind == "grid":
        if n is None:
            raise ValueError("grid needs a side length n")
        return grid_board(n)
    if order is None:
        raise ValueError(f"{kind} geometry needs an order")
    f = field_of_order(order)
    if kind == "projective":
        return projective_space(f, dimension)
    if kind == "affine":
        return affine_space(f, dimension)
    raise ValueError(f"unknown geometry {kind!r}")


# -- parallelism ----------------------------------------------------------


def parallel_classes(s: IncidenceStructure) -> list[tuple[int, ...]]:
    if s.parallel_class_of is None:
        raise ValueError(f"{s.id} has no parallel classes")
    classes: dict[int, list[int]] = {}
    for j, c in enumerate(s.parallel_class_of):
        classes.setdefault(c, []).append(j)
    return [tuple(classes[c]) for c in sorted(classes)]


def parallel_line_through(s: IncidenceStructure, point: int, line: int) -> int:
    """The line through ``point`` parallel to ``line``."""
    if s.kind != "affine" or s.parallel_class_of is None:
        raise ValueError(f"{s.id} is not affine")
    if s.line_masks[line] >> point & 1:
        raise ValueError(f"point {point} lies on line {line}")
    cls = s.parallel_class_of[line]
    for j in s.lines_through[point]:
        if s.parallel_class_of[j] == cls:
            return j
    raise ValueError(f"no parallel to line {line} through point {point}")


# -- axiom verification --------------------------------------------------


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class AxiomReport:
    structure_id: str
    num_points: int
    checks: list[AxiomCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        out = [f"{self.structure_id}: {self.num_points} points"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            out.append(f"  [{mark}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(out)


def _expected(s: IncidenceStructure):
    """(points, lines, line size, lines per point) implied by the kind."""
    if s.kind == "grid":
        n = s.n
        return n * n, 2 * n, n, 2
    q, d = s.order, s.dimension
    per_point = (q**d - 1) // (q - 1)
    if s.kind == "projective":
        m = _projective_count(q, d)
        return m, m * per_point // (q + 1), q + 1, per_point
    if s.kind == "affine":
        m = q**d
        return m, m * per_point // q, q, per_point
    return None


def _uniform(values, expected, what) -> AxiomCheck:
    for i, v in enumerate(values):
        if v != expected:
            return AxiomCheck(what, False, f"item {i} has {v}, expected {expected}")
    return AxiomCheck(what, True, f"all {expected}")


def verify_axioms(s: IncidenceStructure) -> AxiomReport:
    checks: list[AxiomCheck] = []
    sizes = [len(line) for line in s.lines]
    degrees = [len(t) for t in s.lines_through]
    exp = _expected(s)

    if exp is not None:
        m, nl, size, deg = exp
        checks.append(AxiomCheck("point count", s.num_points == m, f"{s.num_points} (expected {m})"))
        checks.append(AxiomCheck("line count", s.num_lines == nl, f"{s.num_lines} (expected {nl})"))
        checks.append(_uniform(sizes, size, "points per line"))
        checks.append(_uniform(degrees, deg, "lines per point"))

    checks.append(
        AxiomCheck(
            "double counting",
            sum(sizes) == sum(degrees),
            f"sum of line sizes {sum(sizes)}, sum of point degrees {sum(degrees)}",
        )
    )

    if s.kind in ("projective", "affine"):
        inc = s.incidence_matrix.astype(np.int32)
        common = inc.T @ inc
        np.fill_diagonal(common, 1)
        bad = np.argwhere(common != 1)
        if len(bad):
            a, b = (int(x) for x in bad[0])
            checks.append(
                AxiomCheck(
                    "two points lie on exactly one line",
                    False,
                    f"points {a} and {b} lie on {int(common[a, b])} common lines",
                )
            )
        else:
            checks.append(AxiomCheck("two points lie on exactly one line", True))

    if s.kind == "affine":
        checks.append(_check_parallel_classes(s))

    if s.kind in ("projective", "affine") and s.order % 2 == 1:
        deg = exp[3]
        checks.append(AxiomCheck("even number of lines per point", deg % 2 == 0, f"{deg}"))

    if s.kind == "grid":
        n = s.n
        bad = [
            p
            for p in range(s.num_points)
            if s.lines_through[p] != (p // n, n + p % n)
        ]
        checks.append(
            AxiomCheck(
                "each point on its row and column",
                not bad,
                f"point {bad[0]} on lines {s.lines_through[bad[0]]}" if bad else "",
            )
        )

    return AxiomReport(s.id, s.num_points, checks)


def _check_parallel_classes(s: IncidenceStructure) -> AxiomCheck:
    name = "parallel classes partition the points"
    if s.parallel_class_of is None:
        return AxiomCheck(name, False, "no parallel classes recorded")
    q, d = s.order, s.dimension
    want_classes = (q**d - 1) // (q - 1)
    classes = parallel_classes(s)
    if len(classes) != want_classes:
        return AxiomCheck(name, False, f"{len(classes)} classes, expected {want_classes}")
    full = (1 << s.num_points) - 1
    for c, members in enumerate(classes):
        acc = 0
        for j in members:
            mask = s.line_masks[j]
            if acc & mask:
                return AxiomCheck(name, False, f"class {c}: line {j} meets an earlier line")
            acc |= mask
        if acc != full:
            return AxiomCheck(name, False, f"class {c} does not cover every point")
    return AxiomCheck(name, True, f"{len(classes)} classes of {q ** (d - 1)} lines")


# -- serialization --------------------------------------------------------


def to_text(s: IncidenceStructure) -> str:
    rows = [f"{s.num_points} {s.num_lines}"]
    rows += [" ".join(str(p) for p in line) for line in s.lines]
    return "\n".join(rows) + "\n"


def from_text(text: str) -> IncidenceStructure:
    head, *body = [ln for ln in text.splitlines() if ln.strip()]
    m, nl = (int(x) for x in head.split())
    lines = tuple(tuple(sorted(int(x) for x in ln.split())) for ln in body)
    if len(lines) != nl:
        raise ValueError(f"header announces {nl} lines, found {len(lines)}")
    if any(not 0 <= p < m for line in lines for p in line):
        raise ValueError("point index out of range")
    return IncidenceStructure("custom", m, lines, tuple(str(i) for i in range(m)))


def to_dict(s: IncidenceStructure) -> dict:
    return {
        "id": s.id,
        "kind": s.kind,
        "order": s.order,
        "dimension": s.dimension if s.kind != "grid" else None,
        "n": s.n,
        "num_points": s.num_points,
        "num_lines": s.num_lines,
        "lines": [list(line) for line in s.lines],
        "point_labels": list(s.point_labels),
        "parallel_class_of": None if s.parallel_class_of is None else list(s.parallel_class_of),
    }


def to_json(s: IncidenceStructure) -> str:
    return json.dumps(to_dict(s), sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> IncidenceStructure:
    obj = json.loads(text)
    pcls = obj.get("parallel_class_of")
    return IncidenceStructure(
        obj["kind"],
        obj["num_points"],
        tuple(tuple(line) for line in obj["lines"]),
        tuple(obj.get("point_labels") or ()),
        order=obj.get("order"),
        dimension=obj.get("dimension") or 2,
        n=obj.get("n"),
        parallel_class_of=None if pcls is None else tuple(pcls),
    )
