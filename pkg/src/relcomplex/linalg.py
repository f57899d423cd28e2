"""Dense exact matrices over GF(q).

Vectors are rows and matrices act on the right (``v -> v A``).  Entries are
integer field encodings (see :mod:`relcomplex.gf`).  The ``*_raw`` helpers
work on plain lists of lists and are what the rest of the package calls in
inner loops; :class:`Matrix` wraps them as an immutable value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf import FieldElem, FieldSpec


class LinAlgError(ValueError):
    """Dimension mismatch, singular matrix or bad index."""


def _enc(F: FieldSpec, x) -> int:
    if isinstance(x, FieldElem):
        return x.value
    if not 0 <= x < F.q:
        raise LinAlgError(f"entry {x} is not an encoding in GF({F.q})")
    return x


# -- raw helpers ----------------------------------------------------------


def rref_raw(F: FieldSpec, rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    M = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(M)
    sub, mul, inv = F.sub, F.mul, F.inv
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        prow = M[r]
        if prow[c] != 1:
            s = inv(prow[c])
            prow = M[r] = [mul(s, x) for x in prow]
        for i in range(nrows):
            if i != r:
                row = M[i]
                t = row[c]
                if t:
                    M[i] = [sub(a, mul(t, b)) for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_raw(F: FieldSpec, rows, ncols: int) -> int:
    return len(rref_raw(F, rows, ncols)[1])


def vecmat_raw(F: FieldSpec, v: Sequence[int], A: Sequence[Sequence[int]]) -> list[int]:
    ncols = len(A[0]) if A else 0
    out = [0] * ncols
    add, mul = F.add, F.mul
    for vi, row in zip(v, A):
        if vi:
            if vi == 1:
                out = [add(o, a) for o, a in zip(out, row)]
            else:
                out = [add(o, mul(vi, a)) for o, a in zip(out, row)]
    return out


def matmul_raw(F: FieldSpec, A, B) -> list[list[int]]:
    return [vecmat_raw(F, row, B) for row in A]


def inverse_raw(F: FieldSpec, A) -> list[list[int]]:
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref_raw(F, aug, 2 * n)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise LinAlgError("matrix is singular")
    return [row[n:] for row in R]


def det_raw(F: FieldSpec, A) -> int:
    n = len(A)
    M = [list(r) for r in A]
    d = 1
    sub, mul, div = F.sub, F.mul, F.div
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        pv = M[c][c]
        d = mul(d, pv)
        for i in range(c + 1, n):
            t = M[i][c]
            if t:
                factor = div(t, pv)
                M[i] = [sub(a, mul(factor, b)) for a, b in zip(M[i], M[c])]
    return d


def kernel_raw(F: FieldSpec, A, ncols: int) -> list[list[int]]:
    """Basis of the right kernel ``{v : A v^T = 0}``, one vector per free column."""
    R, piv = rref_raw(F, A, ncols)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(R, piv):
            if row[free]:
                v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def frobenius_rows(F: FieldSpec, rows, i: int) -> list[list[int]]:
    i %= F.f
    if i == 0:
        return [list(r) for r in rows]
    fr = F.frobenius
    return [[fr(x, i) for x in r] for r in rows]


def normalize_vector(F: FieldSpec, v: Sequence[int]) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            s = F.inv(x)
            return tuple(F.mul(s, y) for y in v)
    return tuple(v)


# -- value types ----------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Immutable ``rows x cols`` matrix of field encodings, row-major."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise LinAlgError("entries do not match the shape")

    @classmethod
    def from_rows(cls, F: FieldSpec, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise LinAlgError("ragged rows")
        return cls(F, len(rows), ncols, tuple(_enc(F, x) for r in rows for x in r))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def _check_same_field(self, other: Matrix):
        if other.field != self.field:
            raise LinAlgError("matrices over different fields")

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinAlgError("dimension mismatch")
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(F.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinAlgError("dimension mismatch")
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(F.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> Matrix:
        F = self.field
        c = _enc(F, c)
        return Matrix(F, self.rows, self.cols, tuple(F.mul(c, a) for a in self.entries))

    def frobenius(self, i: int) -> Matrix:
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(F.frobenius(a, i) for a in self.entries))

    def det(self) -> int:
        return det(self)

    def inverse(self) -> Matrix:
        return mat_inv(self)

    def transpose(self) -> Matrix:
        return transpose(self)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, F: FieldSpec, data: dict) -> Matrix:
        return cls(F, data["rows"], data["cols"], tuple(_enc(F, x) for x in data["entries"]))

    def __repr__(self):
        return f"Matrix({self.to_rows()} over {self.field!r})"


@dataclass(frozen=True)
class Vector:
    field: FieldSpec
    coords: tuple[int, ...]

    def support(self) -> frozenset[int]:
        """1-based indices of the nonzero coordinates."""
        return frozenset(i + 1 for i, x in enumerate(self.coords) if x)


# -- operations -----------------------------------------------------------


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    A._check_same_field(B)
    if A.cols != B.rows:
        raise LinAlgError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    return Matrix.from_rows(A.field, matmul_raw(A.field, A.to_rows(), B.to_rows())) if A.rows else A


def mat_inv(A: Matrix) -> Matrix:
    if not A.is_square:
        raise LinAlgError("only square matrices are invertible")
    return Matrix.from_rows(A.field, inverse_raw(A.field, A.to_rows()))


def det(A: Matrix) -> int:
    if not A.is_square:
        raise LinAlgError("determinant of a non-square matrix")
    return det_raw(A.field, A.to_rows())


def transpose(A: Matrix) -> Matrix:
    rows = A.to_rows()
    return Matrix.from_rows(A.field, [list(c) for c in zip(*rows)]) if rows else Matrix(A.field, A.cols, 0, ())


def rref(A: Matrix) -> tuple[Matrix, int]:
    R, piv = rref_raw(A.field, A.to_rows(), A.cols)
    return Matrix(A.field, len(R), A.cols, tuple(x for r in R for x in r)), len(piv)


def rank(A: Matrix) -> int:
    return rref(A)[1]


def solve_right_kernel(A: Matrix) -> list[Vector]:
    return [Vector(A.field, tuple(v)) for v in kernel_raw(A.field, A.to_rows(), A.cols)]


def identity(F: FieldSpec, n: int) -> Matrix:
    return Matrix(F, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zero(F: FieldSpec, rows: int, cols: int) -> Matrix:
    return Matrix(F, rows, cols, (0,) * (rows * cols))


def elem_unit(F: FieldSpec, n: int, i: int, j: int) -> Matrix:
    """``E_ij``: the n x n matrix with a single 1 in row i, column j (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise LinAlgError(f"index ({i}, {j}) out of range for n = {n}")
    e = [0] * (n * n)
    e[(i - 1) * n + (j - 1)] = 1
    return Matrix(F, n, n, tuple(e))


def diag(F: FieldSpec, values: Sequence) -> Matrix:
    n = len(values)
    if n == 0:
        raise LinAlgError("empty diagonal")
    e = [0] * (n * n)
    for i, v in enumerate(values):
        e[i * n + i] = _enc(F, v)
    return Matrix(F, n, n, tuple(e))


def block_diag(A: Matrix, B: Matrix) -> Matrix:
    A._check_same_field(B)
    rows = [list(r) + [0] * B.cols for r in A.to_rows()]
    rows += [[0] * A.cols + list(r) for r in B.to_rows()]
    return Matrix.from_rows(A.field, rows)
