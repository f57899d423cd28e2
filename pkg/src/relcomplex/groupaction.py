"""Semilinear groups SL_n(q) <= H <= GammaL_n(q) and their action on subspaces.

Conventions
-----------
An element ``(g, i)`` acts on row vectors by ``v -> phi^i(v g)`` where
``phi`` is the Frobenius map applied entrywise.  Composition (first ``x``,
then ``y``) is ``(g, i)(h, j) = (g * phi^{-i}(h), i + j)``.

Since SL_n(q) is normal in H, membership of ``(g, i)`` depends only on the
pair ``(det g, i)``.  The set Q_H of admissible pairs is a subgroup of the
group of such pairs with product ``(a, i)(b, j) = (a * phi^{-i}(b), i + j)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from .gf import FieldSpec
from .linalg import (
    LinAlgError,
    Matrix,
    det_raw,
    diag,
    frobenius_rows,
    identity,
    inverse_raw,
    kernel_raw,
    matmul_raw,
    normalize_vector,
    rref_raw,
    vecmat_raw,
)
from .projective import Subspace, SubspaceTuple, span_of_tuple, support_vector


class GroupError(ValueError):
    pass


# -- elements -------------------------------------------------------------


@dataclass(frozen=True)
class SemilinearElem:
    g: Matrix
    aut: int = 0

    def __post_init__(self):
        if not self.g.is_square:
            raise GroupError("semilinear elements need a square matrix")
        object.__setattr__(self, "aut", self.aut % self.g.field.f)
        if det_raw(self.g.field, self.g.to_rows()) == 0:
            raise GroupError("matrix is singular")

    @property
    def field(self) -> FieldSpec:
        return self.g.field

    @property
    def n(self) -> int:
        return self.g.rows

    @classmethod
    def from_rows(cls, F: FieldSpec, rows, aut: int = 0) -> SemilinearElem:
        return cls(Matrix.from_rows(F, rows), aut)

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> SemilinearElem:
        return cls(identity(F, n), 0)

    def det(self) -> int:
        return det_raw(self.field, self.g.to_rows())

    def __mul__(self, other: SemilinearElem) -> SemilinearElem:
        F = self.field
        h = frobenius_rows(F, other.g.to_rows(), -self.aut)
        return SemilinearElem(Matrix.from_rows(F, matmul_raw(F, self.g.to_rows(), h)), self.aut + other.aut)

    def inverse(self) -> SemilinearElem:
        F = self.field
        ginv = inverse_raw(F, self.g.to_rows())
        return SemilinearElem(Matrix.from_rows(F, frobenius_rows(F, ginv, self.aut)), -self.aut)

    def apply_vector(self, v: Sequence[int]) -> list[int]:
        F = self.field
        w = vecmat_raw(F, v, self.g.to_rows())
        if self.aut:
            w = [F.frobenius(x, self.aut) for x in w]
        return w

    def projective_normal(self) -> SemilinearElem:
        """Scale so the first nonzero entry (row-major) is 1."""
        F = self.field
        lead = next(x for x in self.g.entries if x)
        if lead == 1:
            return self
        return SemilinearElem(self.g.scale(F.inv(lead)), self.aut)

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.g.to_rows()], "aut": self.aut}

    @classmethod
    def from_json(cls, F: FieldSpec, data: dict) -> SemilinearElem:
        return cls(Matrix.from_rows(F, data["matrix"]), data.get("aut", 0))


def projective_equal(x: SemilinearElem, y: SemilinearElem) -> bool:
    if x.field != y.field or x.n != y.n:
        return False
    return x.projective_normal() == y.projective_normal()


# -- the quotient ---------------------------------------------------------


def q_mul(F: FieldSpec, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    (a, i), (b, j) = x, y
    return F.mul(a, F.frobenius(b, -i)), (i + j) % F.f


def q_closure(F: FieldSpec, gens: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    gens = [(a, i % F.f) for a, i in gens]
    seen = {(1, 0)}
    frontier = [(1, 0)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = q_mul(F, x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def q_generating_set(F: FieldSpec, Q: frozenset[tuple[int, int]]) -> list[tuple[int, int]]:
    """Greedy generating set, scanning elements in (aut, det) order."""
    gens: list[tuple[int, int]] = []
    cur = frozenset({(1, 0)})
    for x in sorted(Q, key=lambda t: (t[1], t[0])):
        if x not in cur:
            gens.append(x)
            cur = q_closure(F, gens)
            if cur == Q:
                break
    return gens


def sl_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        out *= q**i - 1
    return out


PRESETS = ("SL", "GL", "SigmaL", "GammaL")


@dataclass(frozen=True)
class GroupSpec:
    """A group H with SL_n(q) <= H <= GammaL_n(q), described by Q_H."""

    n: int
    field: FieldSpec
    mode: str
    quotient: frozenset[tuple[int, int]]
    d: Optional[int] = None
    e: Optional[int] = None
    explicit: tuple[SemilinearElem, ...] = dc_field(default=(), compare=False)

    @property
    def q(self) -> int:
        return self.field.q

    def dets_for_aut(self, i: int) -> list[int]:
        """``D_i = {a : (a, i) in Q_H}``, sorted."""
        i %= self.field.f
        return sorted(a for a, j in self.quotient if j == i)

    def aut_exponents(self) -> list[int]:
        return sorted({i for _, i in self.quotient})

    @property
    def e_index(self) -> int:
        """``|H : H cap GL|``, the number of automorphism exponents present."""
        return len(self.aut_exponents())

    def scalar_count(self) -> int:
        """Number of scalars lambda with lambda*I in H."""
        F = self.field
        return sum(1 for lam in range(1, F.q) if (F.pow(lam, self.n), 0) in self.quotient)

    def generators(self) -> list[SemilinearElem]:
        """Transvections generating SL plus lifts of generators of Q_H."""
        F, n = self.field, self.n
        gens = []
        basis = [F.p**k for k in range(F.f)]
        for a in range(n - 1):
            for lam in basis:
                for (r, c) in ((a, a + 1), (a + 1, a)):
                    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
                    rows[r][c] = lam
                    gens.append(SemilinearElem.from_rows(F, rows))
        for a, i in q_generating_set(F, self.quotient):
            gens.append(SemilinearElem(diag(F, [a] + [1] * (n - 1)), i))
        return gens

    def describe(self) -> str:
        if self.mode == "param":
            return f"param:{self.d},{self.e}"
        return self.mode

    def to_json(self) -> dict:
        out = {"mode": self.mode, "n": self.n, "p": self.field.p, "f": self.field.f}
        if self.mode == "param":
            out.update(d=self.d, e=self.e)
        if self.mode == "explicit":
            out["generators"] = [x.to_json() for x in self.explicit]
        return out


def group_create(
    mode: str,
    n: int,
    F: FieldSpec,
    d: Optional[int] = None,
    e: Optional[int] = None,
    gens: Optional[Sequence[SemilinearElem]] = None,
) -> GroupSpec:
    """Build a GroupSpec.

    ``mode`` is one of SL, GL, SigmaL, GammaL, ``param`` (with ``d | q-1``
    and ``e | f``: H = <SL, diag(omega^d, 1, ...), phi^(f/e)>) or
    ``explicit`` (H = <SL, gens>).
    """
    if n < 1:
        raise GroupError("n must be positive")
    q1, f = F.q - 1, F.f
    if mode == "SL":
        d, e = q1, 1
    elif mode == "GL":
        d, e = 1, 1
    elif mode == "SigmaL":
        d, e = q1, f
    elif mode == "GammaL":
        d, e = 1, f
    elif mode == "param":
        if d is None or e is None:
            raise GroupError("param mode needs d and e")
        if d < 1 or q1 % d:
            raise GroupError(f"d = {d} does not divide q-1 = {q1}")
        if e < 1 or f % e:
            raise GroupError(f"e = {e} does not divide f = {f}")
    elif mode == "explicit":
        gens = tuple(gens or ())
        for x in gens:
            if x.field != F or x.n != n:
                raise GroupError("explicit generator has the wrong field or dimension")
        Q = q_closure(F, [(x.det(), x.aut) for x in gens])
        return GroupSpec(n, F, "explicit", Q, explicit=gens)
    else:
        raise GroupError(f"unknown group mode {mode!r}")
    Q = q_closure(F, [(F.omega_pow(d), 0), (1, f // e)])
    return GroupSpec(n, F, mode, Q, d=d, e=e)


def contains(H: GroupSpec, x: SemilinearElem) -> bool:
    if x.field != H.field or x.n != H.n:
        raise GroupError("element and group disagree on field or dimension")
    return (x.det(), x.aut) in H.quotient


def order(H: GroupSpec) -> int:
    return sl_order(H.n, H.q) * len(H.quotient)


def projective_order(H: GroupSpec) -> int:
    return order(H) // H.scalar_count()


# -- action ---------------------------------------------------------------


def apply_rows(F: FieldSpec, rows, g_rows, aut: int) -> list[list[int]]:
    img = matmul_raw(F, rows, g_rows)
    return frobenius_rows(F, img, aut) if aut % F.f else img


def apply(x: SemilinearElem, s: Subspace) -> Subspace:
    if x.n != s.n or x.field != s.field:
        raise GroupError("dimension or field mismatch")
    return Subspace.span(s.field, apply_rows(s.field, s.basis, x.g.to_rows(), x.aut), s.n)


def apply_tuple(x: SemilinearElem, X: SubspaceTuple) -> SubspaceTuple:
    return SubspaceTuple(tuple(apply(x, s) for s in X))


# -- diagonal mapping spaces ---------------------------------------------


@dataclass(frozen=True)
class DiagonalSpace:
    n: int
    kernel_basis: tuple[Matrix, ...]
    dimension: int
    sample: Optional[Matrix]

    @property
    def has_invertible(self) -> bool:
        return self.sample is not None


def _diag_equations(F: FieldSpec, n: int, pairs) -> list[list[int]]:
    """Rows of the system ``alpha D parallel to beta`` in the unknowns d_1..d_n."""
    eqs = []
    for alpha, beta in pairs:
        for s in range(n):
            for t in range(s + 1, n):
                row = [0] * n
                row[t] = F.mul(alpha[t], beta[s])
                row[s] = F.sub(row[s], F.mul(alpha[s], beta[t]))
                if any(row):
                    eqs.append(row)
    return eqs


def _diag_components(F: FieldSpec, n: int, pairs):
    """Solve ``alpha_j D parallel to beta_j`` for diagonal D.

    Returns ``(components, zero)`` where each component is a list of
    ``(t, r_t)`` meaning ``d_t = r_t * kappa`` for a free scalar kappa, and
    ``zero`` is the set of coordinates forced to vanish.
    """
    parent = list(range(n))
    ratio = [1] * n  # d_t = ratio[t] * d_parent
    zero: set[int] = set()

    def find(t):
        if parent[t] == t:
            return t, 1
        root, r = find(parent[t])
        parent[t] = root
        ratio[t] = F.mul(ratio[t], r)
        return root, ratio[t]

    bad_roots: set[int] = set()
    for alpha, beta in pairs:
        sa, sb = support_vector(alpha), support_vector(beta)
        if not sb <= sa:
            zero |= {t - 1 for t in sa}
            continue
        zero |= {t - 1 for t in sa - sb}
        common = sorted(t - 1 for t in sb)
        if not common:
            continue
        s0 = common[0]
        for t in common[1:]:
            # d_t = (beta_t alpha_s0 / (alpha_t beta_s0)) d_s0
            c = F.div(F.mul(beta[t], alpha[s0]), F.mul(alpha[t], beta[s0]))
            rt, xt = find(t)
            rs, xs = find(s0)
            # d_t = xt d_rt, d_s0 = xs d_rs; need xt d_rt = c xs d_rs
            if rt == rs:
                if xt != F.mul(c, xs):
                    bad_roots.add(rt)
            else:
                parent[rt] = rs
                ratio[rt] = F.div(F.mul(c, xs), xt)
                if rt in bad_roots:
                    bad_roots.add(rs)
    comps: dict[int, list[tuple[int, int]]] = {}
    for t in range(n):
        r, x = find(t)
        comps.setdefault(r, []).append((t, x))
    bad = {find(r)[0] for r in bad_roots} | {find(t)[0] for t in zero}
    free = [c for r, c in sorted(comps.items()) if r not in bad]
    zero_all = {t for r, c in comps.items() if r in bad for t, _ in c}
    return free, zero_all


def diagonal_mapping_space(
    A: Sequence[Subspace], B: Sequence[Subspace], n: Optional[int] = None, F: Optional[FieldSpec] = None
) -> DiagonalSpace:
    """Diagonal matrices D with ``a_j D`` contained in ``b_j`` for every j.

    Entries must be 1-spaces with support of size at least 2.  For empty
    tuples pass ``n`` and ``F``.
    """
    A, B = list(A), list(B)
    if len(A) != len(B):
        raise GroupError("tuples of different lengths")
    if A:
        F, n = A[0].field, A[0].n
    elif n is None or F is None:
        raise GroupError("ambient dimension and field required for empty tuples")
    for s in A + B:
        if s.m != 1 or s.n != n or s.field != F:
            raise GroupError("entries must be 1-spaces in the same ambient space")
        if len(support_vector(s.basis[0])) < 2:
            raise GroupError("entries must have support of size at least 2")
    return _diagonal_space(F, n, [(a.basis[0], b.basis[0]) for a, b in zip(A, B)])


def _diagonal_space(F: FieldSpec, n: int, pairs) -> DiagonalSpace:
    kern = kernel_raw(F, _diag_equations(F, n, pairs), n) if pairs else [
        [1 if i == j else 0 for j in range(n)] for i in range(n)
    ]
    comps, zero = _diag_components(F, n, pairs)
    sample = None
    if not zero:
        d = [0] * n
        for comp in comps:
            for t, r in comp:
                d[t] = r
        sample = diag(F, d)
    return DiagonalSpace(n, tuple(diag(F, v) for v in kern), len(kern), sample)


def restricted_dimension(space: DiagonalSpace, S: Iterable[int]) -> int:
    """Dimension of the space restricted to the 1-based coordinates in S."""
    S = sorted(S)
    if not space.kernel_basis:
        return 0
    F = space.kernel_basis[0].field
    rows = [[D[(t - 1, t - 1)] for t in S] for D in space.kernel_basis]
    return len(rref_raw(F, rows, len(S))[1])


# -- tuple equivalence ----------------------------------------------------


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _solve_power_product(F: FieldSpec, sizes: list[int], target: int) -> Optional[list[int]]:
    """kappa_c with prod kappa_c^sizes[c] == target, or None."""
    q1 = F.q - 1
    T = F.log(target)
    # Bezout: sum b_c sizes_c = g
    g, bs = 0, []
    for s in sizes:
        g2, x, y = _ext_gcd(g, s)
        bs = [b * x for b in bs] + [y]
        g = g2
    g_all, a, _ = _ext_gcd(g, q1)
    if T % g_all:
        return None
    mult = a * (T // g_all)
    return [F.omega_pow(b * mult) for b in bs]


def _greedy_basis(F: FieldSpec, vectors: Sequence[Sequence[int]], n: int) -> list[int]:
    chosen: list[int] = []
    rows: list[list[int]] = []
    for j, v in enumerate(vectors):
        if len(rref_raw(F, rows + [list(v)], n)[1]) > len(rows):
            rows.append(list(v))
            chosen.append(j)
            if len(chosen) == n:
                break
    return chosen


def _fast_path_aut(H: GroupSpec, xs: list[tuple[int, ...]], ys: list[list[int]], i: int, D: list[int]):
    """Spanning tuples of 1-spaces, fixed automorphism exponent."""
    F, n = H.field, H.n
    J = _greedy_basis(F, xs, n)
    A = [list(xs[j]) for j in J]
    B = [list(ys[j]) for j in J]
    if det_raw(F, B) == 0:
        return None
    Ainv, Binv = inverse_raw(F, A), inverse_raw(F, B)
    pairs = []
    Jset = set(J)
    for j in range(len(xs)):
        if j in Jset:
            continue
        pairs.append((vecmat_raw(F, xs[j], Ainv), vecmat_raw(F, ys[j], Binv)))
    comps, zero = _diag_components(F, n, pairs)
    if zero:
        return None
    c0 = F.div(det_raw(F, B), det_raw(F, A))
    for comp in comps:
        for _, r in comp:
            c0 = F.mul(c0, r)
    sizes = [len(c) for c in comps]
    g0 = math.gcd(F.q - 1, *sizes)
    for a in D:
        t = F.div(a, c0)
        if not F.is_power(t, g0):
            continue
        kappas = _solve_power_product(F, sizes, t)
        if kappas is None:
            continue
        d = [0] * n
        for comp, kap in zip(comps, kappas):
            for tt, r in comp:
                d[tt] = F.mul(r, kap)
        CB = [[F.mul(d[k], x) for x in B[k]] for k in range(n)]
        return matmul_raw(F, Ainv, CB)
    return None


def _affine_image_points(F: FieldSpec, base: list[int], dirs: list[list[int]]):
    """All points base + sum s_l dirs_l, s in F^len(dirs), lexicographic in s."""
    for s in itertools.product(range(F.q), repeat=len(dirs)):
        v = list(base)
        for c, dv in zip(s, dirs):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, dv)]
        yield v


def _projective_points(F: FieldSpec, dirs: list[list[int]], n: int):
    """Nonzero vectors of span(dirs) up to scalars, normalized coefficient order."""
    k = len(dirs)
    for lead in range(k):
        for rest in itertools.product(range(F.q), repeat=k - lead - 1):
            coeffs = [0] * lead + [1] + list(rest)
            v = [0] * n
            for c, dv in zip(coeffs, dirs):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, dv)]
            yield v


class _Affine:
    """Affine subspace ``c0 + span(K)`` of F^N, stored with K in RREF."""

    def __init__(self, F: FieldSpec, c0: list[int], K: list[list[int]]):
        self.F, self.c0, self.K = F, c0, K


def _solve_affine(F: FieldSpec, eqs: list[list[int]], rhs: list[int], N: int) -> Optional[_Affine]:
    """Solutions of eqs * c = rhs as an affine space."""
    aug = [list(r) + [b] for r, b in zip(eqs, rhs)]
    R, piv = rref_raw(F, aug, N + 1)
    if piv and piv[-1] == N:
        return None
    c0 = [0] * N
    for row, pc in zip(R, piv):
        c0[pc] = row[N]
    K = kernel_raw(F, [row[:N] for row in R], N) if R else [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    return _Affine(F, c0, K)


def _general_path(H: GroupSpec, X: SubspaceTuple, Yp: list[Subspace], D: list[int]):
    """Backtracking search for g in GL_n with X_j g = Yp_j and det g in D.

    Unknowns are the n^2 entries of g.  The images of a basis v_1..v_k of <X>
    (drawn from the bases of the X_j) are chosen one at a time from the
    affine set allowed by the linear constraints.
    """
    F, n = H.field, H.n
    N = n * n
    # annihilator constraints: for each basis vector v of X_j, (v g) . a = 0 for a in ann(Y_j)
    eqs: list[list[int]] = []
    for Xj, Yj in zip(X, Yp):
        ann = kernel_raw(F, [list(r) for r in Yj.basis], n)
        for v in Xj.basis:
            for a in ann:
                row = [0] * N
                for r in range(n):
                    if v[r]:
                        for c in range(n):
                            if a[c]:
                                row[r * n + c] = F.mul(v[r], a[c])
                if any(row):
                    eqs.append(row)
    sol = _solve_affine(F, eqs, [0] * len(eqs), N)
    if sol is None or not sol.K:
        return None
    vecs = [list(v) for s in X for v in s.basis]
    J = _greedy_basis(F, vecs, n)
    basis_vecs = [vecs[j] for j in J]
    k = len(basis_vecs)
    full = k == n
    ydim = len(rref_raw(F, [list(r) for s in Yp for r in s.basis], n)[1])
    if ydim != k:
        return None

    def image_map(v):
        # matrix L (n x N) with (v g)_c = sum_r v_r g_{rc}
        L = [[0] * N for _ in range(n)]
        for r in range(n):
            if v[r]:
                for c in range(n):
                    L[c][r * n + c] = v[r]
        return L

    maps = [image_map(v) for v in basis_vecs]
    # parametrize c = c0 + K^T t
    K0 = sol.K
    chosen: list[list[int]] = []

    def lin(L, vec):
        return [sum_mul(F, row, vec) for row in L]

    def rec(level: int, c0: list[int], K: list[list[int]]):
        if level == k:
            g = [c0[r * n : (r + 1) * n] for r in range(n)]
            if full:
                yield g
            else:
                yield chosen
            return
        L = maps[level]
        base = lin(L, c0)
        dirs_full = [lin(L, kv) for kv in K]
        R, _ = rref_raw(F, dirs_full, n)
        gen = _projective_points(F, R, n) if level == 0 and full else _affine_image_points(F, base, R)
        for w in gen:
            if level == 0 and full and not any(w):
                continue
            if len(rref_raw(F, chosen + [w], n)[1]) <= len(chosen):
                continue
            # restrict: L (c0 + sum t_l K_l) = w
            eqs2 = [[dirs_full[l][c] for l in range(len(K))] for c in range(n)]
            rhs = [F.sub(w[c], base[c]) for c in range(n)]
            sub = _solve_affine(F, eqs2, rhs, len(K))
            if sub is None:
                continue
            c1 = list(c0)
            for tl, kv in zip(sub.c0, K):
                if tl:
                    c1 = [F.add(x, F.mul(tl, y)) for x, y in zip(c1, kv)]
            K1 = []
            for kt in sub.K:
                v = [0] * N
                for tl, kv in zip(kt, K):
                    if tl:
                        v = [F.add(x, F.mul(tl, y)) for x, y in zip(v, kv)]
                K1.append(v)
            chosen.append(w)
            yield from rec(level + 1, c1, K1)
            chosen.pop()

    Dset = set(D)
    for res in rec(0, sol.c0, K0):
        if full:
            g = res
            dg = det_raw(F, g)
            if dg == 0:
                continue
            for lam in range(1, F.q):
                if F.mul(F.pow(lam, n), dg) in Dset:
                    return [[F.mul(lam, x) for x in row] for row in g]
            continue
        # extend the injective map on <X> to an invertible matrix with det in D
        P = [list(v) for v in basis_vecs]
        Q = [list(w) for w in res]
        for t in range(n):
            e = [1 if c == t else 0 for c in range(n)]
            if len(rref_raw(F, P + [e], n)[1]) > len(P):
                P.append(e)
        for t in range(n):
            e = [1 if c == t else 0 for c in range(n)]
            if len(rref_raw(F, Q + [e], n)[1]) > len(Q):
                Q.append(e)
        g = matmul_raw(F, inverse_raw(F, P), Q)
        dg = det_raw(F, g)
        # scale the image of the last completion vector to hit min(D)
        s = F.div(D[0], dg)
        Q[-1] = [F.mul(s, x) for x in Q[-1]]
        return matmul_raw(F, inverse_raw(F, P), Q)
    return None


def sum_mul(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def tuple_equivalent(H: GroupSpec, X: SubspaceTuple, Y: SubspaceTuple) -> Optional[SemilinearElem]:
    """Some h in H with X^h = Y, or None.

    Automorphism exponents are tried in increasing order and the first
    solution found is returned, so the answer is deterministic.
    """
    if len(X) != len(Y) or X.n != Y.n or X.m != Y.m or X.field != Y.field:
        raise GroupError("tuples differ in shape")
    if X.field != H.field or X.n != H.n:
        raise GroupError("tuples do not live in the group's space")
    F, n = H.field, H.n
    spanning = span_of_tuple(X).m == n
    for i in H.aut_exponents():
        D = H.dets_for_aut(i)
        Yp = [Subspace.span(F, frobenius_rows(F, s.basis, -i), n) for s in Y]
        if X.m == 1 and spanning:
            g = _fast_path_aut(H, [s.basis[0] for s in X], [list(s.basis[0]) for s in Yp], i, D)
        else:
            g = _general_path(H, X, Yp, D)
        if g is None:
            continue
        h = SemilinearElem(Matrix.from_rows(F, g), i)
        if apply_tuple(h, X) != Y or not contains(H, h):
            raise AssertionError("tuple_equivalent produced an invalid element")
        return h
    return None


def parse_generator_file(text: str, F: FieldSpec) -> list[SemilinearElem]:
    """One element per line: ``n*n integer encodings ; aut``.

    Blank lines and lines starting with '#' are ignored.
    """
    out = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        mat, _, aut = line.partition(";")
        try:
            vals = [int(t) for t in mat.replace(",", " ").split()]
            a = int(aut.strip()) if aut.strip() else 0
        except ValueError as exc:
            raise GroupError(f"line {ln}: {exc}") from None
        n = math.isqrt(len(vals))
        if n * n != len(vals) or n == 0:
            raise GroupError(f"line {ln}: {len(vals)} entries is not a square count")
        try:
            out.append(SemilinearElem(Matrix.from_rows(F, [vals[r * n : (r + 1) * n] for r in range(n)]), a))
        except LinAlgError as exc:
            raise GroupError(f"line {ln}: {exc}") from None
    if not out:
        raise GroupError("generator file contains no elements")
    return out
