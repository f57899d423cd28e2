from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relcomplex.gf import (
    FieldError,
    field_create,
    field_from_order,
    is_prime,
    prime_power,
    smallest_irreducible,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 81, 243]


def _elems(q):
    return st.integers(min_value=0, max_value=q - 1)


@pytest.mark.parametrize(
    "p,f,modulus,omega",
    [(2, 2, (1, 1, 1), 2), (3, 1, (0, 1), 2), (3, 2, (1, 0, 1), 4)],
)
def test_modulus_and_omega(p, f, modulus, omega):
    F = field_create(p, f)
    assert F.modulus == modulus
    assert F.omega == omega  # x encodes as p, x+1 as p+1


def test_small_examples():
    F4, F9 = field_create(2, 2), field_create(3, 2)
    x = 2
    assert F4.mul(x, x) == 3  # x+1
    assert F9.pow(4, 8) == 1
    assert F9.frobenius(4, 1) == 2 * 3 + 1  # 2x+1
    assert F4.frobenius(x, 1) == 3
    assert F9.frobenius(7, 0) == 7
    assert F9.is_power(F9.omega_pow(2), 2)
    assert not F9.is_power(F9.omega, 2)
    for F in (F4, F9):
        assert F.inv(1) == 1
        assert all(F.is_power(1, k) for k in range(1, 9))


def test_modulus_is_lex_smallest_irreducible():
    # brute force for GF(8): monic cubics over GF(2) without roots, low degree first
    cands = []
    for c0 in range(2):
        for c1 in range(2):
            for c2 in range(2):
                coeffs = (c0, c1, c2, 1)
                if all(sum(c * r**i for i, c in enumerate(coeffs)) % 2 for r in range(2)):
                    cands.append(coeffs)
    assert smallest_irreducible(2, 3) == min(cands)


def test_primality_helpers():
    assert [k for k in range(20) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(243) == (3, 5)
    with pytest.raises(FieldError):
        prime_power(12)
    with pytest.raises(FieldError):
        field_from_order(6)
    with pytest.raises(FieldError):
        field_create(2, 11, max_q=1024)


@pytest.mark.parametrize("q", ORDERS)
def test_omega_is_primitive(q):
    F = field_from_order(q)
    assert F.order(F.omega) == q - 1
    seen = {F.omega_pow(k) for k in range(q - 1)}
    assert seen == set(range(1, q))
    assert all(F.omega_pow(F.log(a)) == a for a in range(1, q))


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = field_from_order(q)

    @settings(max_examples=60, deadline=None)
    @given(_elems(q), _elems(q), _elems(q))
    def check(a, b, c):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.sub(F.add(a, b), b) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.div(F.mul(a, b), a) == b

    check()


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius_is_automorphism(q):
    F = field_from_order(q)

    @settings(max_examples=40, deadline=None)
    @given(_elems(q), _elems(q), st.integers(min_value=-3, max_value=6))
    def check(a, b, i):
        fa, fb = F.frobenius(a, i), F.frobenius(b, i)
        assert F.frobenius(F.mul(a, b), i) == F.mul(fa, fb)
        assert F.frobenius(F.add(a, b), i) == F.add(fa, fb)
        assert F.frobenius(a, i + F.f) == fa

    check()
    assert [a for a in range(q) if F.frobenius(a, 1) == a] == list(range(F.p))


def test_inverse_of_zero_raises():
    F = field_from_order(9)
    with pytest.raises((FieldError, ZeroDivisionError)):
        F.inv(0)


def test_field_elem_wrapper():
    F = field_from_order(9)
    a, b = F(4), F(5)
    assert int(a * b) == F.mul(4, 5)
    assert int(a + b) == F.add(4, 5)
    assert int(a.frobenius(1)) == F.frobenius(4, 1)
    assert int(a**8) == 1
