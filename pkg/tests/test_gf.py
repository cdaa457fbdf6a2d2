import itertools

import numpy as np
import pytest

from planeswitch.gf import field_add, field_inv, field_mul, field_of_order, make_field, prime_power

PRIME_POWERS = [q for q in range(2, 65) if prime_power(q)]


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_field_axioms_exhaustive(q):
    f = field_of_order(q)
    add, mul = f.add_table, f.mul_table
    els = range(q)
    assert (add[0] == list(els)).all() and (mul[1] == list(els)).all()
    assert (add == add.T).all() and (mul == mul.T).all()
    a, b, c = np.ix_(els, els, els)
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
    for a in els:
        assert 0 in add[a]  # additive inverse exists
        x = 0
        for _ in range(f.p):
            x = add[x, a]
        assert x == 0
    for a in range(1, q):
        assert mul[a, f.inv(a)] == 1
        assert sorted(mul[a, 1:]) == list(range(1, q))


def test_small_fields():
    gf2 = make_field(2, 1)
    for a, b in itertools.product(range(2), repeat=2):
        assert field_add(gf2, a, b) == a ^ b
        assert field_mul(gf2, a, b) == a & b
    gf4 = make_field(2, 2)
    assert all(field_add(gf4, x, x) == 0 for x in range(4))
    assert gf4.modulus == (1, 1, 1)
    assert field_mul(make_field(3, 1), 2, 2) == 1
    for a in range(1, 4):
        assert field_mul(gf4, a, field_inv(gf4, a)) == 1


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


@pytest.mark.parametrize("q", [q for q in PRIME_POWERS if prime_power(q)[1] > 1])
def test_modulus_is_irreducible_and_first(q):
    p, k = prime_power(q)
    f = make_field(p, k)
    # all products of two monic factors of positive degree
    monic = {d: [list(c) + [1] for c in itertools.product(range(p), repeat=d)] for d in range(1, k)}
    reducible = {
        tuple(_poly_mul(a, b, p))
        for d in range(1, k // 2 + 1)
        for a in monic[d]
        for b in monic[k - d]
    }
    assert f.modulus not in reducible
    for low in itertools.product(range(p), repeat=k):
        cand = tuple(low) + (1,)
        if cand == f.modulus:
            break
        assert cand in reducible


def test_deterministic():
    a, b = make_field(2, 3), make_field(2, 3)
    assert a == b
    assert (a.mul_table == b.mul_table).all()


@pytest.mark.parametrize("args", [(4, 1), (1, 1), (2, 7), (3, 4)])
def test_bad_fields(args):
    with pytest.raises(ValueError):
        make_field(*args)


def test_no_field_of_order_6():
    with pytest.raises(ValueError, match="no field of order 6"):
        field_of_order(6)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_inv(make_field(5), 0)
