from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import GF, grp
from relcomplex.groupaction import group_create
from relcomplex.relcomp import (
    ActionHandle,
    ResourceError,
    height_compute,
    ibase_compute,
    ibase_upper_bound,
    omega_primes,
    rc_bruteforce,
    rc_compute,
    theorem_bounds,
)


def act(mode, n, q, m=1):
    return ActionHandle.for_group(grp(mode, n, q), m)


def perm_action(perms, degree=None):
    return ActionHandle.from_permutations(perms, degree=degree)


# calibration actions given directly as permutations
CALIBRATION = {
    "trivial-2": (lambda: perm_action([], degree=2), 1),
    "S3-natural": (lambda: perm_action([[1, 0, 2], [1, 2, 0]]), 2),
    "C5-regular": (lambda: perm_action([[1, 2, 3, 4, 0]]), 2),
    "D4-square": (lambda: perm_action([[1, 2, 3, 0], [3, 2, 1, 0]]), 2),
    "S3-regular": (lambda: perm_action([[1, 0, 3, 2, 5, 4], [2, 4, 0, 5, 1, 3]]), 2),
    "S4-natural": (lambda: perm_action([[1, 0, 2, 3], [1, 2, 3, 0]]), 2),
    "A4-natural": (lambda: perm_action([[1, 2, 0, 3], [0, 2, 3, 1]]), 3),
}


@pytest.mark.parametrize("name", sorted(CALIBRATION))
def test_calibration(name):
    build, expected = CALIBRATION[name]
    h = build()
    assert rc_bruteforce(h, min(h.degree, 5)) == expected
    assert rc_compute(h).rc == expected


def test_s3_via_permutation_matrices():
    # permutation matrices of GF(2)^3 acting on the coordinate points {<e_1>, <e_2>, <e_3>}
    H = grp("GL", 3, 2)
    full = ActionHandle.for_group(H, 1)
    coords = [full.index(p) for p in full.points if sum(p.basis[0]) == 1]
    assert len(coords) == 3
    h = perm_action([[1, 0, 2], [1, 2, 0]])
    assert rc_bruteforce(h, 3) == 2


@pytest.mark.parametrize(
    "mode,n,q,m,expected",
    [("GL", 2, 3, 1, 2), ("GL", 3, 2, 1, 3), ("SigmaL", 2, 9, 1, 3), ("GL", 2, 5, 1, 4), ("SL", 4, 2, 2, 5)],
)
def test_rc_examples(mode, n, q, m, expected):
    rep = rc_compute(act(mode, n, q, m))
    assert rep.exact and rep.rc == expected
    X, Y = rep.witness_tuples()
    assert len(X) == expected


@pytest.mark.parametrize("mode,n,q", [("GL", 2, 3), ("SL", 2, 5), ("GL", 2, 4), ("GammaL", 2, 4), ("SigmaL", 2, 9)])
def test_rc_matches_bruteforce(mode, n, q):
    h = act(mode, n, q)
    rep = rc_compute(h)
    assert rc_bruteforce(h, rep.height + 1) == rep.rc


def test_witness_is_genuine():
    H = grp("GL", 2, 5)
    h = ActionHandle.for_group(H, 1)
    rep = rc_compute(h)
    from relcomplex.groupaction import tuple_equivalent
    from relcomplex.projective import delete_entry
    from relcomplex.relcomp import r_equivalent

    X, Y = rep.witness_tuples()
    assert tuple_equivalent(H, X, Y) is None
    assert r_equivalent(H, X, Y, len(X) - 1)
    for j in range(1, len(X) + 1):
        assert tuple_equivalent(H, delete_entry(X, j), delete_entry(Y, j)) is not None


@pytest.mark.parametrize("mode,n,q,expected", [("GL", 2, 5, 3), ("GL", 3, 3, 4), ("GL", 2, 4, 3), ("GL", 2, 7, 3)])
def test_height(mode, n, q, expected):
    assert height_compute(act(mode, n, q)) == expected


def test_height_of_trivial_group():
    assert height_compute(perm_action([], degree=3)) == 0
    assert ibase_compute(perm_action([], degree=3)) == 0


@pytest.mark.parametrize("mode,n,q,expected", [("GL", 2, 5, 3), ("GL", 2, 3, 3)])
def test_ibase(mode, n, q, expected):
    assert ibase_compute(act(mode, n, q)) == expected


def test_ibase_bound():
    assert ibase_upper_bound(4, 2) == 9
    assert ibase_compute(act("GL", 4, 2, 2)) <= 9


@pytest.mark.parametrize("k,expected", [(1, 0), (6, 2), (8, 1), (30, 3)])
def test_omega_primes(k, expected):
    assert omega_primes(k) == expected


@pytest.mark.parametrize(
    "n,q,m,group,lo,up",
    [
        (3, 4, 1, "PGL", 5, 5),
        (2, 243, 1, "PGammaL", 4, 5),
        (4, 4, 1, "PSL", 6, 6),
        (4, 3, 1, "PSL", 6, 6),
        (4, 3, 2, "PSL", 5, 10),
        (4, 2, 2, "PGL", 5, 10),
        (3, 2, 1, "PGL", 3, 3),
        (2, 3, 1, "PGL", 2, 2),
        (2, 9, 1, "PSigmaL", 3, 3),
        (3, 4, 1, "PSL", 5, 5),
    ],
)
def test_theorem_bounds(n, q, m, group, lo, up):
    b = theorem_bounds(n, q, m, group)
    assert (b.lower, b.upper) == (lo, up)


def test_theorem_bounds_param_and_duality():
    b = theorem_bounds(4, 3, 3, "PGL")  # hyperplanes behave like points; q <= 3 gives n
    assert (b.lower, b.upper) == (4, 4)
    assert theorem_bounds(3, 9, 1, (1, 2)).lower == 6  # GL < H: n+3


def test_report_json_shape():
    rep = rc_compute(act("GL", 2, 3))
    body = json.loads(rep.dumps())
    for key in ("group", "n", "p", "f", "m", "rc", "witness", "height", "ibase", "bounds", "ceiling_used", "elapsed_ms"):
        assert key in body
    assert "elapsed_ms" not in json.loads(rep.dumps(include_timing=False))


def test_ceilings():
    with pytest.raises(ResourceError):
        ActionHandle.for_group(grp("GL", 4, 9), 1, max_points=100)
    with pytest.raises(ValueError):
        ActionHandle.for_group(grp("GL", 3, 2), 4)
    with pytest.raises(ResourceError):
        rc_bruteforce(act("GL", 2, 9), 12)


def test_k_max_override_gives_interval():
    rep = rc_compute(act("GL", 2, 5), k_max_override=3)
    assert not rep.exact
    assert rep.rc_lower <= 4 <= rep.rc_upper


@pytest.mark.slow
def test_workers_agree():
    h = act("SL", 3, 4)
    one = rc_compute(h, workers=1).dumps(include_timing=False)
    assert rc_compute(h, workers=3).dumps(include_timing=False) == one


def test_orbits_of_explicit_action():
    h = perm_action([np.array([1, 0, 2, 3])])
    assert h.order == 2
    assert rc_compute(h).rc == rc_bruteforce(h, 4)
