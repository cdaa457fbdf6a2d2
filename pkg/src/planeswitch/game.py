"""Rules of play: lit-bulb configurations and switch plans.

Configurations and plans are immutable bitsets stored in Python ints
(bit i = point i, resp. line i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .geometry import IncidenceStructure


@dataclass(frozen=True, eq=False)
class Configuration:
    board: IncidenceStructure
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.board.num_points:
            raise ValueError(f"bits do not fit {self.board.num_points} points")

    @property
    def structure_id(self) -> str:
        return self.board.id

    @property
    def num_points(self) -> int:
        return self.board.num_points

    @property
    def lit_count(self) -> int:
        return self.bits.bit_count()

    def lit(self) -> list[int]:
        b, out = self.bits, []
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.bits == other.bits and self.structure_id == other.structure_id

    def __hash__(self):
        return hash((self.structure_id, self.bits))

    def __repr__(self):
        return f"Configuration({self.structure_id}, lit={self.lit()})"

    @classmethod
    def from_points(cls, board: IncidenceStructure, points: Iterable[int]) -> "Configuration":
        bits = 0
        for p in points:
            if not 0 <= p < board.num_points:
                raise IndexError(f"point {p} out of range")
            bits |= 1 << p
        return cls(board, bits)

    def to_hex(self) -> str:
        """Little-endian hex: byte i holds points 8i..8i+7, LSB first."""
        nbytes = (self.num_points + 7) // 8
        return self.bits.to_bytes(nbytes, "little").hex()

    @classmethod
    def from_hex(cls, board: IncidenceStructure, text: str) -> "Configuration":
        raw = bytes.fromhex(text.strip())
        if len(raw) != (board.num_points + 7) // 8:
            raise ValueError(f"expected {(board.num_points + 7) // 8} bytes, got {len(raw)}")
        return cls(board, int.from_bytes(raw, "little"))

    def to_dict(self) -> dict:
        return {"structure": self.structure_id, "bits": self.to_hex()}

    @classmethod
    def from_dict(cls, board: IncidenceStructure, obj: dict) -> "Configuration":
        if obj["structure"] != board.id:
            raise ValueError(f"configuration is for {obj['structure']}, not {board.id}")
        return cls.from_hex(board, obj["bits"])


@dataclass(frozen=True)
class SwitchPlan:
    """Parity of flips per line; flipping a line twice cancels."""

    mask: int = 0

    @classmethod
    def of(cls, lines: Iterable[int]) -> "SwitchPlan":
        mask = 0
        for j in lines:
            if j < 0:
                raise IndexError(f"line {j} out of range")
            mask ^= 1 << j
        return cls(mask)

    @property
    def lines(self) -> list[int]:
        return [j for j in range(self.mask.bit_length()) if self.mask >> j & 1]

    def __len__(self):
        return self.mask.bit_count()

    def __xor__(self, other: "SwitchPlan") -> "SwitchPlan":
        return SwitchPlan(self.mask ^ other.mask)


def toggle(c: Configuration, line: int) -> Configuration:
    masks = c.board.line_masks
    if not 0 <= line < len(masks):
        raise IndexError(f"line {line} out of range for {c.structure_id}")
    return Configuration(c.board, c.bits ^ masks[line])


def plan_effect(board: IncidenceStructure, plan: SwitchPlan) -> int:
    """XOR of the characteristic vectors of the plan's lines."""
    if plan.mask >> board.num_lines:
        raise IndexError(f"plan uses a line beyond {board.num_lines}")
    masks = board.line_masks
    acc = 0
    for j in plan.lines:
        acc ^= masks[j]
    return acc


def apply_plan(c: Configuration, plan: SwitchPlan) -> Configuration:
    return Configuration(c.board, c.bits ^ plan_effect(c.board, plan))


def is_reduced_by(c: Configuration, plan: SwitchPlan) -> bool:
    return apply_plan(c, plan).lit_count < c.lit_count


def parity_class(c: Configuration) -> str:
    return "odd" if c.lit_count % 2 else "even"


def random_configuration(board: IncidenceStructure, seed: int) -> Configuration:
    """Each bulb lit with probability 1/2.

    Bits come from PCG64 (numpy's ``bit_generator.random_raw``): raw 64-bit
    word w supplies points 64w..64w+63, least significant bit first.
    """
    bg = np.random.PCG64(seed)
    nwords = (board.num_points + 63) // 64
    bits = 0
    for w, word in enumerate(bg.random_raw(nwords)):
        bits |= int(word) << (64 * w)
    return Configuration(board, bits & ((1 << board.num_points) - 1))


def random_configurations(board: IncidenceStructure, seed: int, count: int) -> list[Configuration]:
    """``count`` configurations drawn consecutively from one PCG64 stream."""
    bg = np.random.PCG64(seed)
    nwords = (board.num_points + 63) // 64
    full = (1 << board.num_points) - 1
    raw = bg.random_raw(nwords * count).reshape(count, nwords)
    out = []
    for row in raw:
        bits = 0
        for w, word in enumerate(row):
            bits |= int(word) << (64 * w)
        out.append(Configuration(board, bits & full))
    return out
