from __future__ import annotations

import random

import numpy as np
import pytest

from relcomplex.perm import (
    PermError,
    PermGroup,
    big_omega,
    closure_order,
    compose,
    identity_perm,
    invert,
    orbit,
    schreier_sims,
)


def cyc(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            p[x] = c[(i + 1) % len(c)]
    return np.array(p, dtype=np.int32)


def test_compose_order():
    a, b = cyc(3, (0, 1)), cyc(3, (1, 2))
    ab = compose(a, b)
    # 0 -a-> 1 -b-> 2
    assert ab[0] == 2
    assert np.array_equal(compose(a, invert(a)), identity_perm(3))


@pytest.mark.parametrize("k,expected", [(1, 0), (6, 2), (8, 3), (360, 6), (97, 1)])
def test_big_omega(k, expected):
    assert big_omega(k) == expected


def test_orbit():
    g = cyc(6, (0, 1, 2))
    assert sorted(orbit([g], 0)) == [0, 1, 2]
    assert orbit([g], 4) == [4]


@pytest.mark.parametrize(
    "gens,n",
    [
        ([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1))], 5),
        ([cyc(6, (0, 1, 2, 3, 4, 5)), cyc(6, (1, 5), (2, 4))], 6),
        ([cyc(7, (0, 1, 2)), cyc(7, (2, 3, 4, 5, 6))], 7),
        ([cyc(8, (0, 1), (2, 3)), cyc(8, (4, 5, 6, 7))], 8),
    ],
)
def test_schreier_sims_against_closure(gens, n):
    order = closure_order(gens, n)
    G = PermGroup(gens, n, order, seed=3)
    chain = G.chain
    assert chain.complete()
    rng = random.Random(1)
    for _ in range(20):
        assert G.contains(chain.random_element(rng))
    for x in range(n):
        H = G.stabilizer(x)
        assert H.order * len(G.orbit(x)) == order
        for g in H.gens:
            assert g[x] == x


def test_wrong_order_detected():
    gens = [cyc(4, (0, 1, 2, 3))]
    with pytest.raises(PermError):
        schreier_sims(gens, 4, 8, max_rounds=200)
    with pytest.raises(PermError):
        schreier_sims([cyc(4, (0, 1)), cyc(4, (0, 1, 2, 3))], 4, 12)


def test_membership_rejects_outsiders():
    A5 = PermGroup([cyc(5, (0, 1, 2)), cyc(5, (0, 1, 2, 3, 4))], 5, 60)
    assert not A5.contains(cyc(5, (0, 1)))
    assert A5.contains(cyc(5, (0, 1), (2, 3)))
    assert A5.fixed_points() == frozenset()
    assert A5.orbit_reps() == [0]
