"""Exact arithmetic in GF(p^f).

Elements are encoded as integers in ``[0, q)``: the polynomial
``c_0 + c_1 x + ... + c_{f-1} x^{f-1}`` is stored as ``sum(c_i * p**i)``.
All hot-path arithmetic in this package works on these integer encodings
through the methods of :class:`FieldSpec`; :class:`FieldElem` is a thin
operator-overloading wrapper for interactive use and I/O.

The modulus is the lexicographically smallest monic irreducible polynomial
of degree ``f`` (coefficients compared low degree first) and ``omega`` is the
smallest encoding of multiplicative order ``q - 1``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

#: Largest field order accepted by :func:`field_create` unless overridden.
DEFAULT_MAX_Q = 1024
#: Fields up to this order get full addition/multiplication tables.
TABLE_MAX_Q = 1024


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    return all(n % d for d in range(3, r + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, f)`` with ``q == p**f``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = ps[0]
    f = 0
    while q > 1:
        q //= p
        f += 1
    return p, f


# -- polynomials over Z_p as coefficient lists, low degree first ----------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _poly_trim(list(a))
    quot = [0] * max(len(a) - len(b) + 1, 1)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return _poly_trim(quot), a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _poly_trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    d = len(m) - 1
    if d <= 1:
        return True
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``f`` over Z_p.

    Candidates are ordered by their coefficient tuples read from the
    constant term upwards.
    """
    if f == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=f):
        m = list(low) + [1]
        if low[0] != 0 and _is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {f} over GF({p})")  # pragma: no cover


class FieldSpec:
    """The field GF(p^f) with a fixed modulus and primitive element.

    Arithmetic methods take and return integer encodings.  Instances are
    shared per ``(p, f)`` through :func:`field_create` and are immutable.
    """

    def __init__(self, p: int, f: int):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = smallest_irreducible(p, f)
        self._mod_list = list(self.modulus)
        self.tabled = self.q <= TABLE_MAX_Q
        # Polynomial route first; tables need omega, which needs mul.
        self.omega = self._find_omega()
        if self.tabled:
            self._build_tables()

    # -- encoding ---------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.f):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.f:
            coeffs = _poly_mod(_poly_trim([c % self.p for c in coeffs]), self._mod_list, self.p)
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` in the prime subfield."""
        return k % self.p

    # -- slow polynomial arithmetic ---------------------------------------

    def _pmul(self, a: int, b: int) -> int:
        pa = _poly_trim(list(self.coeffs(a)))
        pb = _poly_trim(list(self.coeffs(b)))
        return self.encode(_poly_mod(_poly_mul(pa, pb, self.p), self._mod_list, self.p))

    def _pinv(self, a: int) -> int:
        # extended Euclid on polynomials
        p = self.p
        r0, r1 = list(self._mod_list), _poly_trim(list(self.coeffs(a)))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        return self.encode([x * c % p for x in s0])

    def _ppow(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self._pmul(result, base)
            base = self._pmul(base, base)
            k >>= 1
        return result

    def _find_omega(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        ps = prime_factors(n)
        for a in range(1, self.q):
            if all(self._ppow(a, n // r) != 1 for r in ps):
                return a
        raise FieldError("no primitive element")  # pragma: no cover

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        n = q - 1
        exp = [0] * (2 * n)
        log = [0] * q
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._pmul(x, self.omega)
        for k in range(n, 2 * n):
            exp[k] = exp[k - n]
        self.exp_table = exp
        self.log_table = log
        digits = [self.coeffs(a) for a in range(q)]
        pw = [p**i for i in range(self.f)]

        def vec_add(a, b):
            return sum(((x + y) % p) * w for x, y, w in zip(digits[a], digits[b], pw))

        self.add_table = [[vec_add(a, b) for b in range(q)] for a in range(q)]
        self.neg_table = [sum((-x % p) * w for x, w in zip(digits[a], pw)) for a in range(q)]
        self.sub_table = [[self.add_table[a][self.neg_table[b]] for b in range(q)] for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = log[a]
            row = mul[a]
            for b in range(1, q):
                row[b] = exp[la + log[b]]
        self.mul_table = mul
        self.inv_table = [0] + [exp[(n - log[a]) % n] for a in range(1, q)]

    # -- public arithmetic on encodings ------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.tabled:
            return self.add_table[a][b]
        return self.encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def sub(self, a: int, b: int) -> int:
        if self.tabled:
            return self.sub_table[a][b]
        return self.encode([x - y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: int) -> int:
        if self.tabled:
            return self.neg_table[a]
        return self.encode([-x for x in self.coeffs(a)])

    def mul(self, a: int, b: int) -> int:
        if self.tabled:
            return self.mul_table[a][b]
        return self._pmul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.tabled:
            return self.inv_table[a]
        return self._pinv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        if self.tabled:
            return self.exp_table[(self.log_table[a] * k) % (self.q - 1)]
        if k < 0:
            a, k = self._pinv(a), -k
        return self._ppow(a, k % (self.q - 1))

    def log(self, a: int) -> int:
        """Discrete logarithm to base ``omega``."""
        if a == 0:
            raise FieldError("log of zero")
        if self.tabled:
            return self.log_table[a]
        x = 1
        for k in range(self.q - 1):
            if x == a:
                return k
            x = self._pmul(x, self.omega)
        raise FieldError("log failed")  # pragma: no cover

    def omega_pow(self, k: int) -> int:
        if self.tabled:
            return self.exp_table[k % (self.q - 1)]
        return self._ppow(self.omega, k % (self.q - 1))

    def frobenius(self, a: int, i: int) -> int:
        """``a ** (p ** i)``; ``i`` is taken modulo ``f``."""
        i %= self.f
        if i == 0 or a == 0:
            return a
        return self.pow(a, self.p**i)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def is_power(self, a: int, k: int) -> bool:
        """True iff ``a == b**k`` for some nonzero ``b``."""
        if a == 0:
            raise FieldError("power-subgroup membership is defined on F* only")
        return self.pow(a, (self.q - 1) // math.gcd(k, self.q - 1)) == 1

    def elements(self) -> range:
        return range(self.q)

    def poly_str(self, a: int) -> str:
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(reversed(terms)) or "0"

    def to_json(self) -> dict:
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((self.p, self.f))

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (_field_unpickle, (self.p, self.f))

    def __call__(self, value) -> FieldElem:
        """Wrap an encoding (or coefficient list) as a :class:`FieldElem`."""
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.encode(value))
        if not 0 <= value < self.q:
            raise FieldError(f"encoding {value} out of range for GF({self.q})")
        return FieldElem(self, value)


def _field_unpickle(p, f):
    return _cached_field(p, f)


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, f: int) -> FieldSpec:
    return FieldSpec(p, f)


def field_create(p: int, f: int = 1, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    """Return GF(p^f), raising :class:`FieldError` on bad parameters."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if not isinstance(f, int) or f < 1:
        raise FieldError(f"extension degree must be >= 1, got {f}")
    if p**f > max_q:
        raise FieldError(f"q = {p}^{f} exceeds the configured bound {max_q}")
    return _cached_field(p, f)


def field_from_order(q: int, max_q: int = DEFAULT_MAX_Q) -> FieldSpec:
    p, f = prime_power(q)
    return field_create(p, f, max_q=max_q)


@dataclass(frozen=True)
class FieldElem:
    """A field element: its field plus integer encoding."""

    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, b) -> int:
        if isinstance(b, FieldElem):
            if b.field != self.field:
                raise FieldError("elements of different fields")
            return b.value
        return self.field.from_int(b)

    def __add__(self, b):
        return FieldElem(self.field, self.field.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElem(self.field, self.field.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return FieldElem(self.field, self.field.sub(self._other(b), self.value))

    def __mul__(self, b):
        return FieldElem(self.field, self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElem(self.field, self.field.div(self.value, self._other(b)))

    def __rtruediv__(self, b):
        return FieldElem(self.field, self.field.div(self._other(b), self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElem(self.field, self.field.pow(self.value, k))

    def inv(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> FieldElem:
        return FieldElem(self.field, self.field.frobenius(self.value, i))

    def is_power(self, k: int) -> bool:
        return self.field.is_power(self.value, k)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field.poly_str(self.value)} in {self.field!r}"


def arith(a: FieldElem, b: FieldElem, kind: str) -> FieldElem:
    """Binary field operation by name: ``add``, ``sub``, ``mul`` or ``div``."""
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if kind not in ops:
        raise FieldError(f"unknown operation {kind!r}")
    return ops[kind](b)


def frobenius(a: FieldElem, i: int) -> FieldElem:
    return a.frobenius(i)


def power_subgroup_member(a: FieldElem, k: int) -> bool:
    """True iff ``a`` lies in the subgroup of k-th powers of F*."""
    if k < 1:
        raise FieldError("k must be positive")
    return a.is_power(k)
