import itertools
import json

import pytest

from oracles import brute_coset_min
from planeswitch import build
from planeswitch.game import Configuration, SwitchPlan, apply_plan, random_configurations
from planeswitch.reduce import (
    IneligibleBoard,
    certificate,
    certificate_json,
    reduce_affine_step,
    reduce_fano_step,
    reduce_pair_step,
    reduce_to_floor,
    replay_certificate,
    step_changes,
)


def _toggle_counts(board, plan):
    counts = [0] * board.num_points
    for j in plan.lines:
        for p in board.lines[j]:
            counts[p] += 1
    return counts


def _target_mask(step):
    return sum(1 << p for p in step.target_bulbs)


def test_fano_step():
    fano = build("projective", 2)
    c = Configuration.from_points(fano, [0, 6])
    step = reduce_fano_step(c)
    assert len(step.plan) == 1
    assert apply_plan(c, step.plan).lit_count < 2
    full = Configuration(fano, 0b1111111)
    step = reduce_fano_step(full)
    assert step.plan.lines == [0]
    assert apply_plan(full, step.plan).lit_count == 4
    with pytest.raises(ValueError):
        reduce_fano_step(Configuration.from_points(fano, [3]))
    with pytest.raises(IneligibleBoard):
        reduce_fano_step(Configuration(build("projective", 3), 3))


@pytest.mark.parametrize("kind,q,d", [("projective", 3, 2), ("projective", 5, 2), ("projective", 7, 2),
                                      ("affine", 3, 2), ("affine", 5, 2), ("affine", 7, 2),
                                      ("projective", 3, 4)])
def test_pair_step_is_surgical(kind, q, d):
    board = build(kind, q, d)
    for c in random_configurations(board, 11, 40):
        lit = c.lit()
        if len(lit) < 2:
            continue
        a, b = lit[0], lit[-1]
        step = reduce_pair_step(c, a, b)
        assert step_changes(board, step) == (1 << a) | (1 << b)
        assert apply_plan(c, step.plan).bits == c.bits ^ _target_mask(step)
        joining = board.line_through(a, b)
        assert joining not in step.plan.lines
        per_point = len(board.lines_through[0])
        assert len(step.plan) == 2 * (per_point - 1)


def test_pair_step_pg23_leaves_rest_unchanged():
    board = build("projective", 3)
    for a, b in itertools.combinations(range(13), 2):
        c = Configuration.from_points(board, [a, b])
        assert apply_plan(c, reduce_pair_step(c, a, b).plan).lit_count == 0


def test_pair_step_errors():
    pg3 = build("projective", 3)
    c = Configuration.from_points(pg3, [1, 2])
    with pytest.raises(ValueError):
        reduce_pair_step(c, 1, 1)
    with pytest.raises(ValueError):
        reduce_pair_step(c, 1, 3)
    fano = build("projective", 2)
    with pytest.raises(IneligibleBoard):
        reduce_pair_step(Configuration.from_points(fano, [1, 2]), 1, 2)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_affine_step_is_surgical(q):
    board = build("affine", q)
    for c in random_configurations(board, 5, 30):
        for a in c.lit()[:3]:
            step = reduce_affine_step(c, a)
            assert step.target_bulbs == (a,)
            assert step_changes(board, step) == 1 << a
            skip = board.lines_through[a][0]
            assert skip not in step.plan.lines


def test_affine_step_toggle_counts_ag23():
    board = build("affine", 3)
    for a in range(9):
        step = reduce_affine_step(Configuration.from_points(board, [a]), a)
        # q lines through a plus the other q - 1 lines parallel to the skipped one
        assert len(step.plan) == 5
        skip = board.lines[board.lines_through[a][0]]
        counts = _toggle_counts(board, step.plan)
        for p in range(9):
            if p == a:
                assert counts[p] == 3
            elif p in skip:
                assert counts[p] == 0
            else:
                assert counts[p] == 2


def test_affine_step_single_bulb_to_dark():
    board = build("affine", 3)
    c = Configuration.from_points(board, [4])
    assert apply_plan(c, reduce_affine_step(c, 4).plan).lit_count == 0


def test_affine_step_errors():
    with pytest.raises(IneligibleBoard):
        reduce_affine_step(Configuration(build("affine", 4), 1), 0)
    with pytest.raises(IneligibleBoard):
        reduce_affine_step(Configuration(build("projective", 3), 1), 0)
    with pytest.raises(ValueError):
        reduce_affine_step(Configuration(build("affine", 3), 2), 0)


def test_floor_examples():
    pg3 = build("projective", 3)
    six = Configuration.from_points(pg3, range(6))
    assert reduce_to_floor(six)[0].lit_count == 0
    seven = Configuration.from_points(pg3, range(7))
    assert reduce_to_floor(seven)[0].lit_count == 1
    ag3 = build("affine", 3)
    for c in random_configurations(ag3, 2, 20):
        assert reduce_to_floor(c)[0].lit_count == 0


@pytest.mark.parametrize("kind,q", [("projective", 3), ("affine", 3)])
def test_floor_is_optimal_exhaustive(kind, q):
    board = build(kind, q)
    masks = board.line_masks
    best = {}
    for bits in range(1 << board.num_points):
        final, _ = reduce_to_floor(Configuration(board, bits))
        best.setdefault(final.lit_count, 0)
        best[final.lit_count] += 1
        if bits < 300:
            assert final.lit_count == brute_coset_min(bits, masks)
        if kind == "projective":
            assert final.lit_count == bits.bit_count() % 2
    assert set(best) <= {0, 1}


def test_fano_floor():
    fano = build("projective", 2)
    for bits in range(128):
        final, steps = reduce_to_floor(Configuration(fano, bits))
        assert final.lit_count <= 1


def test_floor_rejects_even_order():
    for args in [("projective", 4), ("affine", 4), ("affine", 2)]:
        with pytest.raises(IneligibleBoard):
            reduce_to_floor(Configuration(build(*args), 1))
    with pytest.raises(IneligibleBoard):
        reduce_to_floor(Configuration(build("grid", n=3), 1))


def test_steps_replay():
    board = build("projective", 5)
    for c in random_configurations(board, 9, 10):
        final, steps = reduce_to_floor(c)
        cur = c
        for st in steps:
            cur = apply_plan(cur, st.plan)
        assert cur == final


def test_certificate_round_trip():
    board = build("affine", 5)
    (c,) = random_configurations(board, 4, 1)
    final, steps = reduce_to_floor(c)
    cert = json.loads(certificate_json(certificate(c, steps, final)))
    assert replay_certificate(board, cert) == final
    assert cert["steps"][0]["rule"] == "affine-single"
    cert["final"] = c.to_hex()
    with pytest.raises(ValueError):
        replay_certificate(board, cert)


def test_certificate_rejects_non_reducing_step():
    board = build("projective", 3)
    c = Configuration.from_points(board, [0])
    cert = {"structure": board.id, "initial": c.to_hex(),
            "steps": [{"targets": [], "lines": [0], "rule": "x"}], "final": c.to_hex()}
    with pytest.raises(ValueError, match="does not reduce"):
        replay_certificate(board, cert)
    assert SwitchPlan.of([0, 0]).mask == 0
