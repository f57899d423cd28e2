"""Permutation groups of known order via randomized Schreier-Sims.

Permutations are numpy integer arrays; ``p[x]`` is the image of ``x``.
Products read left to right (apply ``a`` first, then ``b``), which in
numpy indexing is ``b[a]``.

Because every group handled here has a known order (from the matrix group
or from a parent chain), chain construction is Las Vegas: random elements
are sifted until the product of basic orbit lengths reaches the order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

PERM_DTYPE = np.int32


class PermError(RuntimeError):
    pass


def identity_perm(n: int) -> np.ndarray:
    return np.arange(n, dtype=PERM_DTYPE)


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a`` then ``b``."""
    return b[a]


def invert(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(len(a), dtype=a.dtype)))


@lru_cache(maxsize=None)
def big_omega(k: int) -> int:
    """Number of prime factors of ``k`` counted with multiplicity."""
    if k < 1:
        raise ValueError("k must be positive")
    count, d = 0, 2
    while d * d <= k:
        while k % d == 0:
            k //= d
            count += 1
        d += 1
    return count + (1 if k > 1 else 0)


def orbit(gens: list[np.ndarray], x: int) -> list[int]:
    """Orbit of ``x`` in BFS order."""
    seen = {x}
    out = [x]
    i = 0
    while i < len(out):
        p = out[i]
        i += 1
        for g in gens:
            y = int(g[p])
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def orbit_labels(gens: list[np.ndarray], n: int) -> np.ndarray:
    """Label each point with the smallest point of its orbit."""
    lab = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        if lab[x] < 0:
            for y in orbit(gens, x):
                lab[y] = x
    return lab


class SchreierTree:
    """Orbit of a base point with a BFS tree of generator edges."""

    __slots__ = ("root", "gens", "gens_inv", "parent", "points")

    def __init__(self, root: int, gens: list[np.ndarray], gens_inv: list[np.ndarray]):
        self.root = root
        self.gens = gens
        self.gens_inv = gens_inv
        self.parent: dict[int, tuple[int, int]] = {root: (-1, -1)}
        self.points = [root]
        i = 0
        while i < len(self.points):
            p = self.points[i]
            i += 1
            for j, g in enumerate(gens):
                y = int(g[p])
                if y not in self.parent:
                    self.parent[y] = (j, p)
                    self.points.append(y)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p: int) -> bool:
        return p in self.parent

    def path(self, p: int) -> list[int]:
        """Generator indices j_1..j_t with root^(s_j1 ... s_jt) = p."""
        out = []
        while p != self.root:
            j, p = self.parent[p]
            out.append(j)
        out.reverse()
        return out

    def transversal(self, p: int, n: int) -> np.ndarray:
        w = identity_perm(n)
        for j in self.path(p):
            w = self.gens[j][w]
        return w

    def strip(self, g: np.ndarray, p: int) -> np.ndarray:
        """``g * u_p^{-1}``, which fixes the root when ``root^g = p``."""
        while p != self.root:
            j, r = self.parent[p]
            g = self.gens_inv[j][g]
            p = r
        return g


@dataclass
class _Level:
    base: int
    gens: list[np.ndarray] = field(default_factory=list)
    gens_inv: list[np.ndarray] = field(default_factory=list)
    tree: SchreierTree | None = None

    def rebuild(self):
        self.tree = SchreierTree(self.base, self.gens, self.gens_inv)


class StabChain:
    """Base and strong generating set for a group of known order."""

    def __init__(self, degree: int, order: int):
        self.degree = degree
        self.order = order
        self.levels: list[_Level] = []

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def current_order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.tree)
        return out

    def complete(self) -> bool:
        return self.current_order() == self.order

    def strong_gens(self) -> list[np.ndarray]:
        return list(self.levels[0].gens) if self.levels else []

    def sift(self, g: np.ndarray) -> tuple[np.ndarray, int]:
        """Return the residue and the level at which sifting stopped."""
        for i, lv in enumerate(self.levels):
            p = int(g[lv.base])
            if p not in lv.tree:
                return g, i
            g = lv.tree.strip(g, p)
        return g, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        h, i = self.sift(g)
        return i == len(self.levels) and is_identity(h)

    def add(self, g: np.ndarray) -> bool:
        """Sift ``g`` and extend the chain with its residue; True if it grew."""
        h, i = self.sift(g)
        if i == len(self.levels):
            if is_identity(h):
                return False
            moved = np.nonzero(h != np.arange(self.degree))[0]
            self.levels.append(_Level(int(moved[0])))
        hinv = invert(h)
        for lv in self.levels[: i + 1]:
            lv.gens.append(h)
            lv.gens_inv.append(hinv)
            lv.rebuild()
        return True

    def random_element(self, rng: random.Random) -> np.ndarray:
        """Uniformly random element (requires a complete chain)."""
        w = identity_perm(self.degree)
        for lv in reversed(self.levels):
            p = lv.tree.points[rng.randrange(len(lv.tree))]
            w = lv.tree.transversal(p, self.degree)[w]
        return w


def _product_replacement(gens: list[np.ndarray], rng: random.Random, degree: int):
    slots = [g for g in gens] or [identity_perm(degree)]
    while len(slots) < 10:
        slots.append(slots[len(slots) % len(gens)] if gens else identity_perm(degree))
    acc = identity_perm(degree)
    for _ in range(50):
        i, j = rng.sample(range(len(slots)), 2)
        slots[i] = slots[j][slots[i]] if rng.random() < 0.5 else slots[i][slots[j]]
        acc = slots[i][acc]
    while True:
        i, j = rng.sample(range(len(slots)), 2)
        slots[i] = slots[j][slots[i]] if rng.random() < 0.5 else slots[i][slots[j]]
        acc = slots[i][acc]
        yield acc


def schreier_sims(
    gens: list[np.ndarray], degree: int, order: int, seed: int = 0, max_rounds: int = 100_000
) -> StabChain:
    chain = StabChain(degree, order)
    for g in gens:
        chain.add(g)
    if chain.current_order() > order:
        raise PermError("generators produce more elements than the stated order")
    rng = random.Random(seed)
    stream = _product_replacement(gens, rng, degree)
    rounds = 0
    while not chain.complete():
        chain.add(next(stream))
        rounds += 1
        if rounds > max_rounds or chain.current_order() > order:
            raise PermError("stated order does not match the generated group")
    # an understated order can look complete; further random elements must sift
    for _ in range(20):
        if not chain.contains(next(stream)):
            raise PermError("stated order is smaller than the generated group")
    return chain


def closure_order(gens: list[np.ndarray], degree: int, limit: int = 2_000_000) -> int:
    """Order of the generated group by enumerating elements (small groups only)."""
    start = identity_perm(degree)
    seen = {start.tobytes()}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                h = g[w]
                k = h.tobytes()
                if k not in seen:
                    seen.add(k)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise PermError("group too large for closure enumeration")
        frontier = nxt
    return len(seen)


class PermGroup:
    """A permutation group of known order with a lazily built chain."""

    def __init__(self, gens: list[np.ndarray], degree: int, order: int, seed: int = 0):
        self.degree = degree
        self.order = order
        self.seed = seed
        self._gens = [g for g in gens if not is_identity(g)]
        self._chain: StabChain | None = None

    @property
    def gens(self) -> list[np.ndarray]:
        return self._gens

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = schreier_sims(self._gens, self.degree, self.order, seed=self.seed)
            self._gens = self._chain.strong_gens()
        return self._chain

    def is_trivial(self) -> bool:
        return self.order == 1

    def orbit(self, x: int) -> list[int]:
        return orbit(self._gens, x)

    def orbit_reps(self, points=None) -> list[int]:
        """Smallest point of each nontrivial orbit, in increasing order."""
        lab = orbit_labels(self._gens, self.degree)
        pts = range(self.degree) if points is None else points
        reps = []
        seen = set()
        for x in pts:
            r = int(lab[x])
            if r in seen:
                continue
            seen.add(r)
            if len(self.orbit(x)) > 1:
                reps.append(r)
        return sorted(reps)

    def moved_points(self) -> list[int]:
        if not self._gens:
            return []
        moved = np.zeros(self.degree, dtype=bool)
        ar = np.arange(self.degree)
        for g in self._gens:
            moved |= g != ar
        return [int(x) for x in np.nonzero(moved)[0]]

    def fixed_points(self) -> frozenset[int]:
        moved = set(self.moved_points())
        return frozenset(x for x in range(self.degree) if x not in moved)

    def contains(self, g: np.ndarray) -> bool:
        return self.chain.contains(g)

    def stabilizer(self, y: int) -> PermGroup:
        """Point stabilizer, generated by sifting uniform random elements."""
        orb = SchreierTree(y, self._gens, [invert(g) for g in self._gens]) if self._gens else None
        osize = len(orb) if orb else 1
        target = self.order // osize
        if osize == 1:
            return self
        if target == 1:
            return PermGroup([], self.degree, 1, self.seed)
        chain = self.chain
        rng = random.Random(hash((self.seed, y, self.order)) & 0xFFFFFFFF)
        sub = StabChain(self.degree, target)
        rounds = 0
        while not sub.complete():
            g = chain.random_element(rng)
            g = orb.strip(g, int(g[y]))
            sub.add(g)
            rounds += 1
            if rounds > 100_000 or sub.current_order() > target:
                raise PermError("stabilizer construction failed")
        out = PermGroup(sub.strong_gens(), self.degree, target, self.seed)
        out._chain = sub
        return out


__all__ = [
    "PermError",
    "PermGroup",
    "SchreierTree",
    "StabChain",
    "big_omega",
    "closure_order",
    "compose",
    "identity_perm",
    "invert",
    "is_identity",
    "orbit",
    "orbit_labels",
    "schreier_sims",
]
