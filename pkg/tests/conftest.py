from __future__ import annotations

import itertools

import pytest

from relcomplex.gf import field_from_order
from relcomplex.groupaction import SemilinearElem, group_create
from relcomplex.linalg import LinAlgError, Matrix


def GF(q: int):
    return field_from_order(q)


def grp(mode: str, n: int, q: int, **kw):
    return group_create(mode, n, GF(q), **kw)


def enumerate_group(H):
    """Every element of a small H, by brute force over GL_n(q) x Aut."""
    F, n = H.field, H.n
    out = []
    for entries in itertools.product(range(F.q), repeat=n * n):
        rows = [list(entries[r * n : (r + 1) * n]) for r in range(n)]
        try:
            g = Matrix.from_rows(F, rows)
            d = g.det()
        except LinAlgError:
            continue
        if d == 0:
            continue
        for i in H.aut_exponents():
            if (d, i) in H.quotient:
                out.append(SemilinearElem(g, i))
    return out


@pytest.fixture(scope="session")
def gf():
    return GF


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
