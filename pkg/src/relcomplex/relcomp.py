"""Relational complexity, height and irredundant base size of (H, Omega_m).

The main search enumerates independent tuples P (each point strictly
shrinks the pointwise stabilizer) up to the action of the group, by
extending canonical representatives with orbit representatives of the
current pointwise stabilizer.  At each node it looks for the last entries
a, b of a witness pair (P + a, P + b), i.e. b lies in every orbit
a^{G_(P minus x_i)} but not in a^{G_(P)}.  The relational complexity is the
largest witness length found (or 1 when there is none), and the height is
the largest depth reached.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .gf import FieldSpec, prime_factors
from .groupaction import (
    GroupSpec,
    apply_rows,
    group_create,
    projective_order,
    tuple_equivalent,
)
from .linalg import normalize_vector, vecmat_raw
from .perm import PermGroup, big_omega, closure_order, orbit_labels
from .projective import (
    DEFAULT_MAX_POINTS,
    Subspace,
    SubspaceTuple,
    enumerate_omega,
    gaussian_binomial,
    subtuple,
)

DEFAULT_MAX_CELLS = 10_000_000
SPLIT_DEPTH = 2


class ResourceError(RuntimeError):
    """A materialization or time bound was exceeded."""


def omega_primes(k: int) -> int:
    """Number of distinct prime divisors of k, with omega(1) = 0."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return len(prime_factors(k)) if k > 1 else 0


# -- action handle --------------------------------------------------------


class ActionHandle:
    """A group acting on a finite point set, materialized as permutations."""

    def __init__(
        self,
        perm_gens: list[np.ndarray],
        degree: int,
        order: int,
        group: Optional[GroupSpec] = None,
        m: Optional[int] = None,
        points: Optional[list[Subspace]] = None,
        label: str = "",
        seed: int = 0,
    ):
        self.perm_gens = perm_gens
        self.degree = degree
        self.order = order
        self.group = group
        self.m = m
        self.points = points
        self.label = label
        self.seed = seed
        self._index = {p.key: i for i, p in enumerate(points)} if points is not None else None
        self._perm_group: Optional[PermGroup] = None

    @classmethod
    def for_group(
        cls,
        H: GroupSpec,
        m: int,
        max_points: int = DEFAULT_MAX_POINTS,
        max_cells: int = DEFAULT_MAX_CELLS,
    ) -> ActionHandle:
        F, n = H.field, H.n
        count = gaussian_binomial(n, m, F.q) if 1 <= m <= n else 0
        if count == 0:
            raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
        if count > max_points:
            raise ResourceError(f"|Omega_{m}| = {count} exceeds the materialization bound {max_points}")
        gens = H.generators()
        if count * len(gens) > max_cells:
            raise ResourceError("generator image table exceeds the cell bound")
        pts = enumerate_omega(F, n, m, max_points)
        index = {p.key: i for i, p in enumerate(pts)}
        perms = []
        for x in gens:
            g_rows, aut = x.g.to_rows(), x.aut
            img = np.empty(count, dtype=np.int32)
            for i, s in enumerate(pts):
                if m == 1:
                    v = vecmat_raw(F, s.basis[0], g_rows)
                    if aut:
                        v = [F.frobenius(c, aut) for c in v]
                    key = normalize_vector(F, v)
                else:
                    key = Subspace.span(F, apply_rows(F, s.basis, g_rows, aut), n).key
                img[i] = index[key]
            perms.append(img)
        order = projective_order(H) if m < n else 1
        label = f"{H.describe()}_{n}({F.q}) on Omega_{m}"
        return cls(perms, count, order, group=H, m=m, points=pts, label=label)

    @classmethod
    def from_permutations(
        cls, perms: Sequence[Sequence[int]], degree: Optional[int] = None, order: Optional[int] = None, label: str = ""
    ) -> ActionHandle:
        """Calibration action from explicit permutations of range(degree)."""
        arrs = [np.asarray(p, dtype=np.int32) for p in perms]
        if degree is None:
            if not arrs:
                raise ValueError("degree required when no generators are given")
            degree = len(arrs[0])
        for a in arrs:
            if len(a) != degree or sorted(a.tolist()) != list(range(degree)):
                raise ValueError("not a permutation of the point set")
        if order is None:
            order = closure_order(arrs, degree)
        return cls(arrs, degree, order, label=label or f"perm group on {degree} points")

    @property
    def perm_group(self) -> PermGroup:
        if self._perm_group is None:
            self._perm_group = PermGroup(self.perm_gens, self.degree, self.order, self.seed)
        return self._perm_group

    def index(self, s: Subspace) -> int:
        if self._index is None:
            raise ValueError("this action has no subspace points")
        return self._index[s.key]

    def point(self, i: int):
        return self.points[i] if self.points is not None else i

    def tuple_of(self, idx: Sequence[int]):
        if self.points is None:
            return list(idx)
        return SubspaceTuple(tuple(self.points[i] for i in idx))


# -- r-equivalence --------------------------------------------------------


def r_equivalent(H: GroupSpec, X: SubspaceTuple, Y: SubspaceTuple, r: int) -> bool:
    """True iff every r-subtuple of X is H-equivalent to the matching one of Y."""
    k = len(X)
    if len(Y) != k:
        raise ValueError("tuples differ in length")
    if not 1 <= r:
        raise ValueError("r must be at least 1")
    r = min(r, k)
    for idx in itertools.combinations(range(1, k + 1), r):
        if tuple_equivalent(H, subtuple(X, idx), subtuple(Y, idx)) is None:
            return False
    return True


# -- reports --------------------------------------------------------------


@dataclass
class Bounds:
    lower: int
    upper: Optional[int]
    lower_src: str
    upper_src: str
    diagnostics: list[str] = field(default_factory=list)

    def contains(self, v: int) -> bool:
        return self.lower <= v and (self.upper is None or v <= self.upper)

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "sources": {"lower": self.lower_src, "upper": self.upper_src},
            "diagnostics": list(self.diagnostics),
        }


@dataclass
class RCReport:
    label: str
    rc: int
    exact: bool
    rc_lower: int
    rc_upper: Optional[int]
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    height: Optional[int]
    ibase: Optional[int]
    bounds: Optional[Bounds]
    ceiling_used: Optional[int]
    nodes: int
    elapsed_ms: int
    group: Optional[GroupSpec] = None
    m: Optional[int] = None
    handle: Optional[ActionHandle] = field(default=None, repr=False)

    def witness_tuples(self):
        if self.witness is None or self.handle is None:
            return None
        X, Y = self.witness
        return self.handle.tuple_of(X), self.handle.tuple_of(Y)

    def to_json(self, include_timing: bool = True) -> dict:
        H = self.group
        wt = self.witness_tuples()
        if wt is None:
            wj = None
        elif self.handle is not None and self.handle.points is not None:
            wj = {"X": wt[0].to_json(), "Y": wt[1].to_json()}
        else:
            wj = {"X": list(wt[0]), "Y": list(wt[1])}
        out = {
            "group": H.describe() if H else self.label,
            "n": H.n if H else None,
            "p": H.field.p if H else None,
            "f": H.field.f if H else None,
            "m": self.m,
            "rc": self.rc,
            "exact": self.exact,
            "interval": [self.rc_lower, self.rc_upper],
            "witness": wj,
            "height": self.height,
            "ibase": self.ibase,
            "bounds": self.bounds.to_json() if self.bounds else None,
            "ceiling_used": self.ceiling_used,
            "nodes": self.nodes,
        }
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def dumps(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_json(include_timing), sort_keys=True)


# -- the search -----------------------------------------------------------


class _BudgetExceeded(Exception):
    pass


class _StabCache:
    """Pointwise stabilizers keyed by point sets, derived by removing max(S)."""

    def __init__(self, G: PermGroup):
        self.cache: dict[frozenset, PermGroup] = {frozenset(): G}

    def get(self, S: frozenset) -> PermGroup:
        hit = self.cache.get(S)
        if hit is not None:
            return hit
        y = max(S)
        out = self.get(S - {y}).stabilizer(y)
        self.cache[S] = out
        return out


def _witness_at(K: PermGroup, Ls: list[PermGroup], N: int) -> Optional[tuple[int, int]]:
    """First (a, b) with b in every a^{L_i} and not in a^K; a runs over K-orbit reps."""
    lab = orbit_labels(K.gens, N)
    reps = sorted({int(x) for x in lab})
    for a in reps:
        Ka = set(K.orbit(a))
        cand: Optional[set[int]] = None
        for L in Ls:
            o = set(L.orbit(a))
            cand = o if cand is None else cand & o
            if cand <= Ka:
                break
        if cand is None:
            cand = set(range(N))
        rest = cand - Ka
        if rest:
            return a, min(rest)
    return None


@dataclass
class _Ctx:
    stab: _StabCache
    N: int
    want_rc: bool
    want_h: bool
    best_rc: int
    best_h: int
    max_depth: int
    deadline: Optional[float]
    split_depth: Optional[int] = None
    rc_witness: Optional[tuple] = None
    h_witness: Optional[tuple] = None
    tasks: list = field(default_factory=list)
    visited: set = field(default_factory=set)
    nodes: int = 0
    truncated: bool = False


def _dfs(ctx: _Ctx, P: tuple[int, ...], S: frozenset):
    ctx.nodes += 1
    if ctx.deadline is not None and ctx.nodes % 16 == 0 and time.monotonic() > ctx.deadline:
        raise _BudgetExceeded
    s = len(P)
    K = ctx.stab.get(S)
    Ls = [ctx.stab.get(S - {x}) for x in P]
    if s > ctx.best_h:
        ctx.best_h, ctx.h_witness = s, P
    if ctx.want_rc and s + 1 > ctx.best_rc:
        w = _witness_at(K, Ls, ctx.N)
        if w is not None:
            ctx.best_rc = s + 1
            ctx.rc_witness = (P + (w[0],), P + (w[1],))
    if K.is_trivial():
        return
    if s >= ctx.max_depth:
        ctx.truncated = True
        return
    for y in K.orbit_reps():
        S2 = S | {y}
        if S2 in ctx.visited:
            continue
        ctx.visited.add(S2)
        ky = K.order // len(K.orbit(y))
        if any(L.order // len(L.orbit(y)) <= ky for L in Ls):
            continue
        bound = s + 1 + big_omega(ky)
        if not ((ctx.want_h and bound > ctx.best_h) or (ctx.want_rc and bound + 1 > ctx.best_rc)):
            continue
        if ctx.split_depth is not None and s + 1 == ctx.split_depth:
            ctx.tasks.append((P + (y,), S2))
        else:
            _dfs(ctx, P + (y,), S2)


_WORKER: dict = {}


def _init_worker(gens, N, order, seed):
    _WORKER["G"] = (gens, N, order, seed)


def _run_task(args):
    P, S, want_rc, want_h, best_rc, best_h, max_depth, deadline = args
    gens, N, order, seed = _WORKER["G"]
    return _task_body(PermGroup(gens, N, order, seed), N, P, S, want_rc, want_h, best_rc, best_h, max_depth, deadline)


def _task_body(G, N, P, S, want_rc, want_h, best_rc, best_h, max_depth, deadline):
    ctx = _Ctx(_StabCache(G), N, want_rc, want_h, best_rc, best_h, max_depth, deadline)
    ctx.visited.add(S)
    timed_out = False
    try:
        K = ctx.stab.get(S)
        bound = len(P) + big_omega(K.order)
        if (want_h and bound > best_h) or (want_rc and bound + 1 > best_rc):
            _dfs(ctx, P, S)
    except _BudgetExceeded:
        timed_out = True
    return {
        "best_rc": ctx.best_rc,
        "best_h": ctx.best_h,
        "rc_witness": ctx.rc_witness,
        "h_witness": ctx.h_witness,
        "nodes": ctx.nodes,
        "truncated": ctx.truncated,
        "timed_out": timed_out,
    }


@dataclass
class SearchResult:
    rc: int
    height: int
    rc_witness: Optional[tuple]
    height_set: Optional[tuple]
    nodes: int
    complete: bool
    truncated: bool


def search(
    handle: ActionHandle,
    want_rc: bool = True,
    want_height: bool = True,
    max_depth: Optional[int] = None,
    workers: int = 1,
    budget_secs: Optional[float] = None,
) -> SearchResult:
    """Joint search for the longest witness and the height.

    The tree is cut at a fixed depth into independent subtrees that are
    explored with no shared state, so the result does not depend on the
    number of workers.
    """
    G = handle.perm_group
    N = handle.degree
    deadline = time.monotonic() + budget_secs if budget_secs else None
    md = max_depth if max_depth is not None else N
    ctx = _Ctx(_StabCache(G), N, want_rc, want_height, 1 if N > 0 else 0, 0, md, deadline, split_depth=SPLIT_DEPTH)
    # a witness of length 1 exists iff the group is intransitive; the root check finds it
    ctx.best_rc = 0
    complete = True
    try:
        _dfs(ctx, (), frozenset())
    except _BudgetExceeded:
        complete = False
    best_rc, best_h = max(ctx.best_rc, 1), ctx.best_h
    rc_w, h_w = ctx.rc_witness, ctx.h_witness
    nodes, truncated = ctx.nodes, ctx.truncated
    if complete and ctx.tasks:
        args = [(P, S, want_rc, want_height, best_rc, best_h, md, deadline) for P, S in ctx.tasks]
        if workers <= 1:
            results = [
                _task_body(G, N, P, S, want_rc, want_height, best_rc, best_h, md, deadline) for P, S in ctx.tasks
            ]
        else:
            with ProcessPoolExecutor(
                max_workers=workers, initializer=_init_worker, initargs=(handle.perm_gens, N, handle.order, handle.seed)
            ) as ex:
                results = list(ex.map(_run_task, args))
        for r in results:
            nodes += r["nodes"]
            truncated |= r["truncated"]
            complete &= not r["timed_out"]
            if r["best_rc"] > best_rc and r["rc_witness"] is not None:
                best_rc, rc_w = r["best_rc"], r["rc_witness"]
            if r["best_h"] > best_h:
                best_h, h_w = r["best_h"], r["h_witness"]
    return SearchResult(best_rc, best_h, rc_w, h_w, nodes, complete, truncated)


def height_compute(handle: ActionHandle, budget_secs: Optional[float] = None) -> int:
    res = search(handle, want_rc=False, want_height=True, budget_secs=budget_secs)
    if not res.complete:
        raise ResourceError(f"height search exceeded its budget (best so far {res.height})")
    return res.height


def ibase_compute(handle: ActionHandle, budget_secs: Optional[float] = None) -> int:
    """Longest chain G > G_(a1) > G_(a1,a2) > ... > 1 with every step strict."""
    G = handle.perm_group
    deadline = time.monotonic() + budget_secs if budget_secs else None
    memo: dict[frozenset, int] = {}
    counter = [0]

    def depth(K: PermGroup) -> int:
        if K.is_trivial():
            return 0
        counter[0] += 1
        if deadline is not None and counter[0] % 16 == 0 and time.monotonic() > deadline:
            raise ResourceError("ibase search exceeded its budget")
        key = K.fixed_points()
        hit = memo.get(key)
        if hit is not None:
            return hit
        cap = big_omega(K.order)
        best = 0
        for y in K.orbit_reps():
            best = max(best, 1 + depth(K.stabilizer(y)))
            if best >= cap:
                break
        memo[key] = best
        return best

    return depth(G)


def rc_compute(
    handle: ActionHandle,
    k_max_override: Optional[int] = None,
    workers: int = 1,
    budget_secs: Optional[float] = None,
    with_height: bool = True,
    with_ibase: bool = False,
    witness_lower: Optional[int] = None,
) -> RCReport:
    """Relational complexity of the action, with height and bounds.

    ``k_max_override`` caps witness length; the result is then exact only
    if the cap was never reached.  On budget exhaustion the report carries
    the interval [best witness or ``witness_lower``, theorem upper bound].
    """
    t0 = time.monotonic()
    max_depth = k_max_override - 1 if k_max_override is not None else None
    res = search(handle, want_rc=True, want_height=with_height, max_depth=max_depth, workers=workers, budget_secs=budget_secs)
    H, m = handle.group, handle.m
    bounds = theorem_bounds_for_group(H, m) if H is not None else None
    exact = res.complete and not res.truncated
    height = res.height if (exact and with_height) else None
    ibase = ibase_compute(handle, budget_secs=budget_secs) if (with_ibase and exact) else None
    lower = max(res.rc, witness_lower or 0)
    if exact:
        upper: Optional[int] = res.rc
    else:
        upper = bounds.upper if bounds else None
        if bounds:
            lower = max(lower, bounds.lower)
    ceiling = height + 1 if height is not None else (k_max_override if k_max_override else (bounds.upper if bounds else None))
    return RCReport(
        label=handle.label,
        rc=res.rc if exact else lower,
        exact=exact,
        rc_lower=lower if not exact else res.rc,
        rc_upper=upper,
        witness=res.rc_witness,
        height=height,
        ibase=ibase,
        bounds=bounds,
        ceiling_used=ceiling,
        nodes=res.nodes,
        elapsed_ms=int((time.monotonic() - t0) * 1000),
        group=H,
        m=m,
        handle=handle,
    )


# -- brute force oracle ---------------------------------------------------


def rc_bruteforce(handle: ActionHandle, k_max: int, max_tuples: int = 3_000_000) -> int:
    """RC by the literal definition, over all tuples of length <= k_max.

    Orbits on k-tuples come from connected components of the graph whose
    edges are the generator moves.
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    N = handle.degree
    if N**k_max > max_tuples:
        raise ResourceError(f"{N}^{k_max} tuples exceed the oracle bound")
    gens = handle.perm_gens
    labels: dict[int, np.ndarray] = {}
    for k in range(1, k_max + 1):
        M = N**k
        codes = np.arange(M, dtype=np.int64)
        digits = [(codes // N**(k - 1 - j)) % N for j in range(k)]
        rows, cols = [], []
        for g in gens:
            img = np.zeros(M, dtype=np.int64)
            for d in digits:
                img = img * N + g[d]
            rows.append(codes)
            cols.append(img)
        if rows:
            A = coo_matrix((np.ones(len(gens) * M, dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))), shape=(M, M))
            _, lab = connected_components(A, directed=True, connection="weak")
        else:
            lab = np.arange(M)
        labels[k] = lab.astype(np.int64)

    def works(r: int) -> bool:
        for k in range(r + 1, k_max + 1):
            M = N**k
            codes = np.arange(M, dtype=np.int64)
            digits = [(codes // N**(k - 1 - j)) % N for j in range(k)]
            cols = []
            for idx in itertools.combinations(range(k), r):
                sub = np.zeros(M, dtype=np.int64)
                for j in idx:
                    sub = sub * N + digits[j]
                cols.append(labels[r][sub])
            sig = np.stack(cols, axis=1)
            _, inv = np.unique(sig, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            lab_k = labels[k]
            lo = np.full(inv.max() + 1, np.iinfo(np.int64).max)
            hi = np.full(inv.max() + 1, -1)
            np.minimum.at(lo, inv, lab_k)
            np.maximum.at(hi, inv, lab_k)
            if np.any(lo != hi):
                return False
        return True

    for r in range(1, k_max + 1):
        if works(r):
            return r
    return k_max


# -- published bounds -----------------------------------------------------


def _is_power_class_full(F: FieldSpec, dets: Sequence[int], n: int) -> bool:
    """Whether dets * (F*)^n covers F*."""
    g = math.gcd(n, F.q - 1)
    classes = {F.log(a) % g for a in dets}
    return len(classes) == g


def theorem_bounds_for_group(H: GroupSpec, m: int) -> Bounds:
    """Tightest published interval for RC(H, Omega_m)."""
    F, n, q = H.field, H.n, H.field.q
    e = H.e_index
    g = math.gcd(n, q - 1)
    D0 = H.dets_for_aut(0)
    contains_pgl = _is_power_class_full(F, D0, n)
    in_psigmal = all(F.log(a) % g == 0 for a, _ in H.quotient)
    psigmal_ne_pgammal = g > 1
    oe = omega_primes(e)
    fallback_upper = big_omega(projective_order(H)) + 1
    diags: list[str] = []

    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    if m == n or n == 1:
        return Bounds(1, 1, "single point", "single point")
    mm = min(m, n - m)
    if mm >= 2:
        lo = mm * n - mm * mm + 1
        up = (mm + 1) * n - 2 * mm + 2 + oe
        src = "m-space bound" + (" (duality m -> n-m)" if mm != m else "")
        return Bounds(lo, up, src, src)
    dual = " (duality m -> n-m)" if m != 1 else ""

    def B(lo, up, ls, us):
        return Bounds(lo, up, ls + dual, us + dual, diags)

    if q == 2:
        return B(n, n, "Cherlin q=2", "Cherlin q=2")
    if n == 2:
        if q == 3:
            if contains_pgl:
                return B(2, 2, "n=2 exact PGL_2(3)", "n=2 exact PGL_2(3)")
            diags.append("PSL_2(3): no published value; using generic bounds")
            return B(2, fallback_upper, "general lower n", "chain length")
        if e == 1:
            if contains_pgl or q >= 7:
                return B(4, 4, "n=2 exact", "n=2 exact")
            diags.append("n=2 below PGL with q < 7: outside the exact n=2 range")
            return B(2, fallback_upper, "general lower n", "chain length")
        if q >= 8:
            if q == 9 and in_psigmal:
                return B(3, 3, "n=2 semilinear PSigmaL_2(9)", "n=2 semilinear PSigmaL_2(9)")
            return B(4, 4 + oe, "n=2 semilinear", "n=2 semilinear + height chain")
        diags.append("n=2, q < 8 with field automorphisms: upper bound from the height chain only")
        return B(2, 4 + oe, "general lower n", "n=2 exact + height chain")
    # n >= 3
    if e == 1:
        if contains_pgl:
            v = n if q <= 3 else n + 2
            return B(v, v, "PGL exact", "PGL exact")
        v = 2 * n - 1 if n == 3 else 2 * n - 2
        return B(v, v, "below-PGL exact", "below-PGL exact")
    lo, src = n + 2, "semilinear n+2"
    if contains_pgl and n + 3 > lo:
        lo, src = n + 3, "semilinear n+3"
    if in_psigmal and psigmal_ne_pgammal and 2 * n - 2 > lo:
        lo, src = 2 * n - 2, "semilinear 2n-2"
    return B(lo, 2 * n - 1 + oe, src, "semilinear + height chain")


def theorem_bounds(n: int, q: int, m: int, group: Union[str, tuple[int, int], GroupSpec]) -> Bounds:
    """Interval for RC on Omega_m; ``group`` is a preset name, (d, e), or a GroupSpec."""
    if isinstance(group, GroupSpec):
        return theorem_bounds_for_group(group, m)
    from .gf import field_from_order

    F = field_from_order(q, max_q=max(q, 1024))
    if isinstance(group, tuple):
        H = group_create("param", n, F, d=group[0], e=group[1])
    else:
        H = group_create(_preset_name(group), n, F)
    return theorem_bounds_for_group(H, m)


def _preset_name(name: str) -> str:
    key = name.strip()
    aliases = {
        "PSL": "SL", "SL": "SL",
        "PGL": "GL", "GL": "GL",
        "PSigmaL": "SigmaL", "SigmaL": "SigmaL",
        "PGammaL": "GammaL", "GammaL": "GammaL",
    }
    if key not in aliases:
        raise ValueError(f"unknown group preset {name!r}")
    return aliases[key]


def ibase_upper_bound(n: int, m: int) -> int:
    """Published bound on the irredundant base size of PGL_n on Omega_m."""
    return (m + 1) * n - 2 * m + 1
