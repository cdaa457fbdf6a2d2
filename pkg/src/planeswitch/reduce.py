"""Constructive reductions for the boards where a closed-form strategy exists.

* order-2 projective spaces: flip any line holding two lit bulbs;
* an even number of lines through each point: extinguish any two lit
  bulbs at once (``reduce_pair_step``);
* affine planes of odd order: extinguish a single lit bulb
  (``reduce_affine_step``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .game import Configuration, SwitchPlan, apply_plan, plan_effect
from .geometry import IncidenceStructure, parallel_line_through

FANO = "fano-line"
PAIR = "pair-elimination"
AFFINE = "affine-single"
COSET = "coset-search"


class IneligibleBoard(ValueError):
    """No constructive strategy applies to this board."""


@dataclass(frozen=True)
class ReductionStep:
    target_bulbs: tuple[int, ...]
    plan: SwitchPlan
    proof_tag: str

    def to_dict(self) -> dict:
        return {"targets": list(self.target_bulbs), "lines": self.plan.lines, "rule": self.proof_tag}


def _lines_per_point(board: IncidenceStructure) -> int:
    degrees = {len(t) for t in board.lines_through}
    if len(degrees) != 1:
        raise IneligibleBoard(f"{board.id} is not point-regular")
    return degrees.pop()


def _require_lit(c: Configuration, *points: int) -> None:
    for p in points:
        if not c.bits >> p & 1:
            raise ValueError(f"bulb {p} is not lit")


def reduce_fano_step(c: Configuration) -> ReductionStep:
    board = c.board
    if board.kind != "projective" or board.order != 2:
        raise IneligibleBoard(f"{board.id} is not a projective space of order 2")
    if c.lit_count < 2:
        raise ValueError("need at least 2 lit bulbs")
    for j, mask in enumerate(board.line_masks):
        hit = c.bits & mask
        if hit.bit_count() >= 2:
            targets = tuple(p for p in board.lines[j] if hit >> p & 1)
            return ReductionStep(targets, SwitchPlan.of([j]), FANO)
    raise AssertionError("two lit points always share a line")


def pair_eligible(board: IncidenceStructure) -> bool:
    return board.kind in ("projective", "affine") and _lines_per_point(board) % 2 == 0


def reduce_pair_step(c: Configuration, a: int, b: int) -> ReductionStep:
    """Flip every line through a or b except the line joining them."""
    board = c.board
    if a == b:
        raise ValueError("need two distinct bulbs")
    _require_lit(c, a, b)
    if not pair_eligible(board):
        raise IneligibleBoard(f"{board.id}: odd number of lines through each point")
    joining = board.line_through(a, b)
    lines = [j for j in board.lines_through[a] + board.lines_through[b] if j != joining]
    return ReductionStep((min(a, b), max(a, b)), SwitchPlan.of(lines), PAIR)


def reduce_affine_step(c: Configuration, a: int) -> ReductionStep:
    """Turn off bulb ``a`` alone on an affine plane of odd order.

    Flips the lines through ``a`` except the lowest-index one (``skip``),
    then the lines parallel to ``skip`` through the other points of the
    first flipped line. That second family is ``skip``'s parallel class
    minus ``skip`` itself: order - 1 lines.
    """
    board = c.board
    if board.kind != "affine" or board.dimension != 2:
        raise IneligibleBoard(f"{board.id} is not an affine plane")
    if board.order % 2 == 0:
        raise IneligibleBoard(f"{board.id} has even order")
    _require_lit(c, a)
    skip, first, *rest = board.lines_through[a]
    parallels = [parallel_line_through(board, p, skip) for p in board.lines[first] if p != a]
    return ReductionStep((a,), SwitchPlan.of([first, *rest, *parallels]), AFFINE)


def floor_strategy(board: IncidenceStructure) -> str:
    """Which constructive rule ``reduce_to_floor`` uses on this board."""
    if board.kind == "projective" and board.order == 2:
        return FANO
    if board.kind == "affine" and board.dimension == 2 and board.order % 2 == 1:
        return AFFINE
    if board.kind in ("projective", "affine") and pair_eligible(board):
        return PAIR
    raise IneligibleBoard(f"no constructive reduction for {board.id}")


def reduce_to_floor(c: Configuration) -> tuple[Configuration, list[ReductionStep]]:
    """Apply constructive steps until none applies.

    Lowest-index lit bulbs are always the targets.
    """
    rule = floor_strategy(c.board)
    steps: list[ReductionStep] = []
    while True:
        lit = c.lit()
        if rule == FANO and len(lit) >= 2:
            step = reduce_fano_step(c)
        elif rule == PAIR and len(lit) >= 2:
            step = reduce_pair_step(c, lit[0], lit[1])
        elif rule == AFFINE and lit:
            step = reduce_affine_step(c, lit[0])
        else:
            return c, steps
        nxt = apply_plan(c, step.plan)
        if nxt.lit_count >= c.lit_count:
            raise AssertionError(f"{step.proof_tag} step failed to reduce {c}")
        steps.append(step)
        c = nxt


def step_changes(board: IncidenceStructure, step: ReductionStep) -> int:
    """Bitmask of the bulbs a step toggles an odd number of times."""
    return plan_effect(board, step.plan)


# -- certificates ----------------------------------------------------------


def certificate(initial: Configuration, steps: list[ReductionStep], final: Configuration) -> dict:
    return {
        "structure": initial.structure_id,
        "initial": initial.to_hex(),
        "steps": [s.to_dict() for s in steps],
        "final": final.to_hex(),
    }


def replay_certificate(board: IncidenceStructure, cert: dict) -> Configuration:
    """Re-apply every step; raise if any step fails to reduce or the end state differs."""
    c = Configuration.from_dict(board, {"structure": cert["structure"], "bits": cert["initial"]})
    for i, step in enumerate(cert["steps"]):
        nxt = apply_plan(c, SwitchPlan.of(step["lines"]))
        if nxt.lit_count >= c.lit_count:
            raise ValueError(f"step {i} does not reduce the board")
        c = nxt
    if c.to_hex() != cert["final"]:
        raise ValueError("replayed configuration differs from the certificate's final state")
    return c


def certificate_json(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True, separators=(",", ":"))
