import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import reachable, span
from planeswitch import build
from planeswitch.game import (
    Configuration,
    SwitchPlan,
    apply_plan,
    is_reduced_by,
    parity_class,
    random_configuration,
    random_configurations,
    toggle,
)
from planeswitch.search import switch_code

FANO = build("projective", 2)
PG23 = build("projective", 3)
PG24 = build("projective", 4)
AG24 = build("affine", 4)


def test_toggle_examples():
    dark = Configuration(FANO)
    for j in range(7):
        assert toggle(dark, j).lit_count == 3
    full = Configuration(PG24, (1 << 21) - 1)
    assert toggle(full, 0).lit_count == 16
    with pytest.raises(IndexError):
        toggle(dark, 7)


@given(st.integers(0, (1 << 13) - 1), st.integers(0, 12))
def test_toggle_involution(bits, line):
    c = Configuration(PG23, bits)
    assert toggle(toggle(c, line), line) == c


@given(st.integers(0, (1 << 16) - 1), st.lists(st.integers(0, 19), max_size=30), st.randoms())
def test_plan_order_independent(bits, lines, rnd):
    c = Configuration(AG24, bits)
    folded = c
    for j in lines:
        folded = toggle(folded, j)
    shuffled = lines[:]
    rnd.shuffle(shuffled)
    assert apply_plan(c, SwitchPlan.of(shuffled)) == folded


@given(st.integers(0, (1 << 20) - 1))
def test_plan_twice_is_identity(mask):
    c = Configuration(PG24, 0b1011011)
    plan = SwitchPlan(mask)
    assert apply_plan(apply_plan(c, plan), plan) == c


def test_apply_plan_examples():
    c = Configuration(PG23)
    assert apply_plan(c, SwitchPlan()) == c
    assert apply_plan(c, SwitchPlan.of(range(13))).lit_count == 0
    grid = build("grid", n=2)
    # row 0 and column 0 hit the corner twice
    assert apply_plan(Configuration(grid), SwitchPlan.of([0, 2])).lit_count == 2
    with pytest.raises(IndexError):
        apply_plan(c, SwitchPlan.of([13]))


def test_is_reduced_by():
    two = Configuration.from_points(FANO, FANO.lines[0][:2])
    assert is_reduced_by(two, SwitchPlan.of([0]))
    assert not is_reduced_by(two, SwitchPlan())
    one = Configuration.from_points(PG23, [5])
    assert not any(is_reduced_by(one, SwitchPlan.of([j])) for j in range(13))


def test_parity():
    assert not FANO.all_lines_even()
    assert parity_class(Configuration(FANO)) == "even"
    assert parity_class(toggle(Configuration(FANO), 0)) == "odd"
    assert PG23.all_lines_even() and AG24.all_lines_even()
    c = Configuration.from_points(PG23, [0, 3, 5, 8, 11])
    rng = random.Random(3)
    for _ in range(50):
        plan = SwitchPlan(rng.getrandbits(13))
        assert parity_class(apply_plan(c, plan)) == "odd"


def test_reachable_is_coset():
    for board in (FANO, build("affine", 2), build("grid", n=3)):
        code = switch_code(board)
        words = span(board.line_masks)
        assert len(words) == 1 << code.k
        for bits in (0, 1, 5, (1 << board.num_points) - 1):
            assert reachable(bits, board.line_masks) == {bits ^ w for w in words}


@given(st.integers(0, (1 << 21) - 1))
def test_hex_round_trip(bits):
    c = Configuration(PG24, bits)
    text = c.to_hex()
    assert len(text) == 6
    assert Configuration.from_hex(PG24, text) == c
    assert Configuration.from_dict(PG24, c.to_dict()) == c


def test_hex_is_little_endian():
    c = Configuration.from_points(PG24, [0, 9, 20])
    assert c.to_hex() == "010210"


def test_hex_rejects_bad_input():
    with pytest.raises(ValueError):
        Configuration.from_hex(PG24, "ff")
    with pytest.raises(ValueError):
        Configuration.from_hex(FANO, "ff")  # bit 7 set on a 7-point board
    with pytest.raises(ValueError):
        Configuration.from_dict(PG24, {"structure": "PG(2,3)", "bits": "000000"})


def test_configurations_on_different_boards_differ():
    assert Configuration(PG23, 1) != Configuration(build("affine", 3), 1)


def test_random_configuration_reproducible():
    a = random_configuration(PG24, 7)
    assert a == random_configuration(PG24, 7)
    assert a != random_configuration(PG24, 8)
    batch = random_configurations(PG24, 7, 3)
    assert batch[0] == a and len(set(batch)) == 3


@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_random_configuration_fits(seed):
    big = build("projective", 3, 4)
    c = random_configuration(big, seed)
    assert c.bits >> 121 == 0
