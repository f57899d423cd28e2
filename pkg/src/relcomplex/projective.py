"""Subspaces of GF(q)^n in canonical form, and tuples of them.

A subspace is stored as its reduced row echelon basis.  Equality of
subspaces is equality of these bases, and the canonical order on Omega_m is
lexicographic on the flattened basis encodings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf import FieldSpec
from .linalg import LinAlgError, Matrix, normalize_vector, rref_raw

DEFAULT_MAX_POINTS = 20_000


class ProjectiveError(ValueError):
    pass


@dataclass(frozen=True, order=False)
class Subspace:
    field: FieldSpec
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(x for row in self.basis for x in row)

    @classmethod
    def span(cls, F: FieldSpec, vectors: Iterable[Sequence[int]], n: int | None = None) -> Subspace:
        """Canonical subspace spanned by ``vectors`` (integer encodings)."""
        vecs = [list(v) for v in vectors]
        if n is None:
            if not vecs:
                raise ProjectiveError("cannot infer ambient dimension from no vectors")
            n = len(vecs[0])
        if any(len(v) != n for v in vecs):
            raise ProjectiveError("vectors of differing length")
        R, _ = rref_raw(F, vecs, n)
        if not R:
            raise ProjectiveError("the zero subspace is not a point of any Omega_m")
        return cls(F, n, tuple(tuple(r) for r in R))

    def matrix(self) -> Matrix:
        return Matrix.from_rows(self.field, self.basis)

    def contains_vector(self, v: Sequence[int]) -> bool:
        R, _ = rref_raw(self.field, list(self.basis) + [list(v)], self.n)
        return len(R) == self.m

    def contains(self, other: Subspace) -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]

    @classmethod
    def from_json(cls, F: FieldSpec, data) -> Subspace:
        return cls.span(F, data)

    def __lt__(self, other: Subspace) -> bool:
        return self.key < other.key

    def __repr__(self):
        return f"<{self.basis}>"


def point(F: FieldSpec, v: Sequence[int]) -> Subspace:
    """The 1-space spanned by a nonzero vector."""
    w = normalize_vector(F, v)
    if not any(w):
        raise ProjectiveError("zero vector spans no point")
    return Subspace(F, len(w), (w,))


def unit_vector(n: int, i: int, coeff: int = 1) -> list[int]:
    """``coeff * e_i`` with 1-based ``i``."""
    v = [0] * n
    v[i - 1] = coeff
    return v


def support_vector(v: Sequence[int]) -> frozenset[int]:
    return frozenset(i + 1 for i, x in enumerate(v) if x)


def support(s: Subspace) -> frozenset[int]:
    """1-based coordinates that are nonzero in some vector of ``s``.

    An RREF basis suffices: a coordinate is nonzero somewhere in the span iff
    it is nonzero in some spanning vector.
    """
    out: set[int] = set()
    for row in s.basis:
        out |= support_vector(row)
    return frozenset(out)


def gaussian_binomial(n: int, m: int, q: int) -> int:
    if m < 0 or m > n:
        return 0
    num = den = 1
    for i in range(m):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _rref_bases(F: FieldSpec, n: int, m: int):
    q = F.q
    for pivots in itertools.combinations(range(n), m):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(m)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            yield tuple(tuple(r) for r in rows)


def enumerate_omega(F: FieldSpec, n: int, m: int, max_points: int = DEFAULT_MAX_POINTS) -> list[Subspace]:
    """All m-subspaces of GF(q)^n, sorted by flattened RREF basis."""
    if not 1 <= m <= n:
        raise ProjectiveError(f"need 1 <= m <= n, got m={m}, n={n}")
    count = gaussian_binomial(n, m, F.q)
    if count > max_points:
        raise ProjectiveError(f"|Omega_{m}| = {count} exceeds the bound {max_points}")
    pts = [Subspace(F, n, b) for b in _rref_bases(F, n, m)]
    pts.sort(key=lambda s: s.key)
    return pts


# -- tuples ---------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceTuple:
    entries: tuple[Subspace, ...]

    def __post_init__(self):
        if not self.entries:
            raise ProjectiveError("tuples must be nonempty")
        s0 = self.entries[0]
        for s in self.entries:
            if s.n != s0.n or s.m != s0.m or s.field != s0.field:
                raise ProjectiveError("tuple entries must share field, ambient dimension and m")

    @classmethod
    def of(cls, entries: Iterable[Subspace]) -> SubspaceTuple:
        return cls(tuple(entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def field(self) -> FieldSpec:
        return self.entries[0].field

    @property
    def n(self) -> int:
        return self.entries[0].n

    @property
    def m(self) -> int:
        return self.entries[0].m

    def to_json(self) -> list:
        return [s.to_json() for s in self.entries]

    @classmethod
    def from_json(cls, F: FieldSpec, data) -> SubspaceTuple:
        return cls(tuple(Subspace.from_json(F, s) for s in data))


def span_of_tuple(X: SubspaceTuple) -> Subspace:
    return Subspace.span(X.field, [r for s in X for r in s.basis], X.n)


def tuple_dim(X: SubspaceTuple) -> int:
    return span_of_tuple(X).m


def delete_entry(X: SubspaceTuple, i: int) -> SubspaceTuple:
    """Drop the entry at 1-based position ``i``."""
    if not 1 <= i <= len(X):
        raise ProjectiveError(f"index {i} out of range")
    if len(X) == 1:
        raise ProjectiveError("deleting the only entry leaves an empty tuple")
    return SubspaceTuple(X.entries[: i - 1] + X.entries[i:])


def subtuple(X: SubspaceTuple, indices: Iterable[int]) -> SubspaceTuple:
    """Order-preserving selection by 1-based indices."""
    idx = sorted(set(indices))
    if not idx:
        raise ProjectiveError("empty subtuple")
    if idx[0] < 1 or idx[-1] > len(X):
        raise ProjectiveError("index out of range")
    return SubspaceTuple(tuple(X.entries[i - 1] for i in idx))


__all__ = [
    "DEFAULT_MAX_POINTS",
    "LinAlgError",
    "ProjectiveError",
    "Subspace",
    "SubspaceTuple",
    "delete_entry",
    "enumerate_omega",
    "gaussian_binomial",
    "point",
    "span_of_tuple",
    "subtuple",
    "support",
    "support_vector",
    "tuple_dim",
    "unit_vector",
]
