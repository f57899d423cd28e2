"""Explicit lower-bound witness packages and their verifier.

A package holds tuples X, Y of length k and, for each j, an element g_j
claimed to map X minus x_j onto Y minus y_j.  If verification passes, X and
Y are (k-1)-equivalent but not equivalent, so RC >= k.

All constructions use the standard basis e_1..e_n (1-based in names,
0-based in lists).  Free parameters are the smallest admissible field
encodings, so packages are reproducible for a fixed modulus.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .gf import FieldSpec, field_create
from .groupaction import (
    GroupSpec,
    SemilinearElem,
    apply_tuple,
    contains,
    group_create,
    tuple_equivalent,
)
from .linalg import Matrix
from .projective import Subspace, SubspaceTuple, delete_entry, point


class HypothesisError(ValueError):
    """The construction's hypotheses fail for the requested parameters."""


# -- package types --------------------------------------------------------


@dataclass
class WitnessPackage:
    tag: str
    group: GroupSpec
    m: int
    X: SubspaceTuple
    Y: SubspaceTuple
    witnesses: list[Optional[SemilinearElem]]
    params: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.X)

    @property
    def claim(self) -> str:
        return f"RC >= {self.k}"

    def __post_init__(self):
        if len(self.X) != len(self.Y) or len(self.witnesses) != len(self.X):
            raise ValueError("package lengths disagree")

    def to_json(self) -> dict:
        F = self.group.field
        return {
            "tag": self.tag,
            "params": {"n": self.group.n, "p": F.p, "f": F.f, "m": self.m, **self.params},
            "group": self.group.to_json(),
            "X": self.X.to_json(),
            "Y": self.Y.to_json(),
            "witnesses": [w.to_json() if w is not None else None for w in self.witnesses],
            "claim_k": self.k,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> WitnessPackage:
        gj = data["group"]
        F = field_create(gj["p"], gj["f"], max_q=gj["p"] ** gj["f"])
        group = group_from_json(gj, F)
        params = {k: v for k, v in data["params"].items() if k not in ("n", "p", "f", "m")}
        return cls(
            tag=data["tag"],
            group=group,
            m=data["params"]["m"],
            X=SubspaceTuple.from_json(F, data["X"]),
            Y=SubspaceTuple.from_json(F, data["Y"]),
            witnesses=[SemilinearElem.from_json(F, w) if w is not None else None for w in data["witnesses"]],
            params=params,
        )


def group_from_json(gj: dict, F: FieldSpec) -> GroupSpec:
    mode = gj["mode"]
    if mode == "param":
        return group_create("param", gj["n"], F, d=gj["d"], e=gj["e"])
    if mode == "explicit":
        return group_create("explicit", gj["n"], F, gens=[SemilinearElem.from_json(F, x) for x in gj["generators"]])
    return group_create(mode, gj["n"], F)


@dataclass
class VerifyReport:
    tag: str
    k: int
    membership: list[bool]
    mapping: list[bool]
    solver_found: list[bool]
    non_equivalent: bool

    @property
    def membership_ok(self) -> bool:
        return all(self.membership)

    @property
    def mapping_ok(self) -> bool:
        return all(self.mapping)

    @property
    def passed(self) -> bool:
        return self.membership_ok and self.mapping_ok and self.non_equivalent

    @property
    def statement(self) -> str:
        return f"RC >= {self.k}" if self.passed else "no conclusion"

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "k": self.k,
            "membership": self.membership,
            "mapping": self.mapping,
            "solver_found": self.solver_found,
            "non_equivalent": self.non_equivalent,
            "passed": self.passed,
            "statement": self.statement,
        }


def verify(pkg: WitnessPackage) -> VerifyReport:
    """Check membership and subtuple mapping of each g_j, then that Y is not in X^H."""
    H = pkg.group
    membership, mapping, solver = [], [], []
    for j, w in enumerate(pkg.witnesses, start=1):
        Xj = delete_entry(pkg.X, j) if pkg.k > 1 else None
        Yj = delete_entry(pkg.Y, j) if pkg.k > 1 else None
        if w is None:
            found = tuple_equivalent(H, Xj, Yj) if Xj is not None else None
            solver.append(True)
            membership.append(found is not None)
            mapping.append(found is not None)
            continue
        solver.append(False)
        try:
            ok_mem = contains(H, w)
        except ValueError:
            ok_mem = False
        membership.append(ok_mem)
        mapping.append(Xj is None or (w.n == H.n and apply_tuple(w, Xj) == Yj))
    non_eq = tuple_equivalent(H, pkg.X, pkg.Y) is None
    return VerifyReport(pkg.tag, pkg.k, membership, mapping, solver, non_eq)


# -- helpers --------------------------------------------------------------


def _vec(F: FieldSpec, n: int, coeffs: dict[int, int]) -> list[int]:
    v = [0] * n
    for i, c in coeffs.items():
        v[i - 1] = F.add(v[i - 1], c)
    return v


def _pt(F: FieldSpec, n: int, coeffs: dict[int, int]) -> Subspace:
    return point(F, _vec(F, n, coeffs))


def _span(F: FieldSpec, n: int, vecs: list[dict[int, int]]) -> Subspace:
    return Subspace.span(F, [_vec(F, n, c) for c in vecs], n)


def _ident(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _block(F: FieldSpec, top: list[list[int]], n: int, fill: int = 1) -> list[list[int]]:
    """``top`` (+) fill * I_{n - len(top)}."""
    k = len(top)
    rows = [list(r) + [0] * (n - k) for r in top]
    for i in range(k, n):
        r = [0] * n
        r[i] = fill
        rows.append(r)
    return rows


def _elem(F: FieldSpec, rows, aut: int = 0) -> SemilinearElem:
    return SemilinearElem(Matrix.from_rows(F, rows), aut)


def _tuple(entries) -> SubspaceTuple:
    return SubspaceTuple(tuple(entries))


def _check_group(H: GroupSpec, n: int):
    if H.n != n:
        raise HypothesisError(f"group has n = {H.n}, construction needs n = {n}")


def _scaled_into(H: GroupSpec, rows, auts=None) -> Optional[SemilinearElem]:
    """Some (lambda * g, i) in H, trying automorphism exponents then scalars in order."""
    F, n = H.field, H.n
    from .linalg import det_raw

    d = det_raw(F, rows)
    for i in auts if auts is not None else H.aut_exponents():
        for lam in range(1, F.q):
            if (F.mul(F.pow(lam, n), d), i) in H.quotient:
                return _elem(F, [[F.mul(lam, x) for x in r] for r in rows], i)
    return None


# -- constructions --------------------------------------------------------


def w_general_n(n: int, F: FieldSpec, H: GroupSpec) -> WitnessPackage:
    """Length-n package valid for every H containing SL_n."""
    if n < 2:
        raise HypothesisError("n >= 2 required")
    _check_group(H, n)
    X = [_pt(F, n, {i: 1}) for i in range(1, n)] + [_pt(F, n, {i: 1 for i in range(1, n + 1)})]
    Y = [_pt(F, n, {i: 1}) for i in range(1, n)] + [_pt(F, n, {i: 1 for i in range(1, n)})]
    ws = []
    for ell in range(1, n):
        rows = _ident(n)
        rows[ell - 1][n - 1] = F.neg(1)
        ws.append(_elem(F, rows))
    ws.append(_elem(F, _ident(n)))
    return WitnessPackage("general-n", H, 1, _tuple(X), _tuple(Y), ws)


def _in_z_sigmal(H: GroupSpec) -> bool:
    """Whether H <= <Z, SigmaL_2(q)>, i.e. every determinant is a square."""
    F = H.field
    return all(F.is_power(a, 2) for a, _ in H.quotient)


def w_n2_case_a(q: int, H: GroupSpec) -> WitnessPackage:
    F = H.field
    _check_group(H, 2)
    if F.q != q:
        raise HypothesisError("group field does not match q")
    if q < 8:
        raise HypothesisError("q >= 8 required")
    odd = F.p != 2
    if odd and _in_z_sigmal(H):
        raise HypothesisError("case (a) needs q even or H not inside <Z, SigmaL_2(q)>")
    w = F.omega
    orbit = {F.frobenius(w, i) for i in range(F.f)}
    if odd:
        # alpha in F_p minus {1}, outside the Frobenius orbit of omega
        alpha = next(a for a in range(2, F.p) if a not in orbit)
    else:
        alpha = F.omega_pow(3)
    n = 2
    X = [_pt(F, n, {1: 1}), _pt(F, n, {2: 1}), _pt(F, n, {1: 1, 2: 1}), _pt(F, n, {1: 1, 2: w})]
    Y = X[:3] + [_pt(F, n, {1: 1, 2: alpha})]
    c = F.div(F.sub(alpha, w), F.sub(1, w))
    d = F.div(F.sub(F.div(w, alpha), 1), F.sub(w, 1))
    mats = [
        [[1, c], [0, F.sub(1, c)]],
        [[F.sub(1, d), 0], [d, 1]],
        [[1, 0], [0, F.div(alpha, w)]],
        _ident(2),
    ]
    ws = []
    for rows in mats:
        x = _scaled_into(H, rows, auts=[0] if not odd else None)
        if x is None:
            raise HypothesisError("no scalar multiple of a witness lies in H")
        ws.append(x)
    return WitnessPackage("n2-case-a", H, 1, _tuple(X), _tuple(Y), ws, {"alpha": alpha})


def _theta(F: FieldSpec, lam: int, mu: int) -> int:
    return F.div(F.sub(1, F.mul(F.mul(lam, lam), mu)), F.sub(1, mu))


def _case_b_sets(F: FieldSpec):
    minus1 = F.neg(1)
    S = [x for x in range(F.q) if x not in (0, 1, minus1)]
    T = [x for x in range(F.q) if x not in (0, 1)]
    return S, T


def case_b_condition_i(F: FieldSpec, lam: int, tau: int) -> bool:
    t = _theta(F, lam, tau)
    return t != 0 and F.is_power(t, 2)


def case_b_condition_ii(F: FieldSpec, lam: int, tau: int) -> bool:
    target = F.mul(F.mul(lam, lam), tau)
    return all(F.frobenius(tau, k) != target for k in range(1, F.f))


def case_b_counts(q: int) -> dict[int, int]:
    """For each lambda in S, the number of tau in T satisfying condition (i)."""
    F = field_create(*_pf(q))
    S, T = _case_b_sets(F)
    return {lam: sum(case_b_condition_i(F, lam, t) for t in T) for lam in S}


def _pf(q: int) -> tuple[int, int]:
    from .gf import prime_power

    return prime_power(q)


def find_case_b_params(q: int) -> tuple[int, int]:
    """Smallest (lambda, tau) satisfying both case (b) conditions."""
    F = field_create(*_pf(q))
    if F.p == 2:
        raise HypothesisError("case (b) needs q odd")
    S, T = _case_b_sets(F)
    for lam in S:
        for tau in T:
            if case_b_condition_i(F, lam, tau) and case_b_condition_ii(F, lam, tau):
                return lam, tau
    raise HypothesisError(f"no case (b) parameters exist for q = {q}")


def w_n2_case_b(q: int, H: GroupSpec) -> WitnessPackage:
    F = H.field
    _check_group(H, 2)
    if F.q != q:
        raise HypothesisError("group field does not match q")
    if q < 8:
        raise HypothesisError("q >= 8 required")
    if F.p == 2 or not _in_z_sigmal(H):
        raise HypothesisError("case (b) needs q odd and H inside <Z, SigmaL_2(q)>")
    if q <= 9:
        raise HypothesisError("case (b) needs q > 9 (SigmaL_2(9) is the exception)")
    lam, tau = find_case_b_params(q)
    n = 2
    base = [_pt(F, n, {1: 1}), _pt(F, n, {2: 1}), _pt(F, n, {1: 1, 2: 1})]
    X = base + [_pt(F, n, {1: 1, 2: tau})]
    Y = base + [_pt(F, n, {1: 1, 2: F.mul(F.mul(lam, lam), tau)})]
    return WitnessPackage("n2-case-b", H, 1, _tuple(X), _tuple(Y), [None] * 4, {"lambda": lam, "tau": tau})


def w_psl3(F: FieldSpec, H: GroupSpec) -> WitnessPackage:
    _check_group(H, 3)
    if (F.q - 1) % 3:
        raise HypothesisError("PSL_3(q) = PGL_3(q) when 3 does not divide q-1")
    if F.q < 7:
        raise HypothesisError("|F| >= 7 required (|F| = 4 is checked by direct computation)")
    n = 3
    lam = F.omega
    li = F.inv(lam)
    l2, li2 = F.mul(lam, lam), F.mul(li, li)
    base = [_pt(F, n, {1: 1}), _pt(F, n, {2: 1}), _pt(F, n, {3: 1}), _pt(F, n, {1: 1, 2: 1, 3: 1})]
    X = base + [_pt(F, n, {1: 1, 2: lam, 3: l2})]
    Y = base + [_pt(F, n, {1: 1, 2: li, 3: li2})]
    neg = F.neg
    lp1 = F.add(lam, 1)
    l_li = F.add(lam, li)
    one_li = F.add(1, li)
    mats = [
        [[lam, lp1, l_li], [0, neg(1), 0], [0, 0, neg(li)]],
        [[neg(lam), 0, 0], [lp1, 1, one_li], [0, 0, neg(li)]],
        [[neg(lam), 0, 0], [0, neg(1), 0], [l_li, one_li, li]],
        [[l2, 0, 0], [0, 1, 0], [0, 0, li2]],
        _ident(3),
    ]
    return WitnessPackage("psl3", H, 1, _tuple(X), _tuple(Y), [_elem(F, r) for r in mats], {"lambda": lam})


def _smallest_non_involution(F: FieldSpec) -> int:
    for lam in range(1, F.q):
        if F.mul(lam, lam) != 1:
            return lam
    raise HypothesisError("|F| >= 4 required: every nonzero element satisfies lambda = lambda^-1")


def w_gl_lower(n: int, F: FieldSpec) -> WitnessPackage:
    if n < 3:
        raise HypothesisError("n >= 3 required")
    if F.q < 4:
        raise HypothesisError("|F| >= 4 required")
    H = group_create("GL", n, F)
    lam = _smallest_non_involution(F)
    li = F.inv(lam)
    X = [_pt(F, n, {i: 1}) for i in range(1, n + 1)] + [_pt(F, n, {i: 1 for i in range(1, n + 1)})]
    Y = list(X)
    X.append(_pt(F, n, {1: 1, 2: lam}))
    Y.append(_pt(F, n, {1: 1, 2: li}))
    g1 = _block(F, [[lam, F.add(1, lam)], [0, F.neg(1)]], n, lam)
    g2 = _block(F, [[F.neg(1), 0], [F.add(1, li), li]], n, li)
    gn1 = [[0] * n for _ in range(n)]
    for i in range(n):
        gn1[i][i] = li if i == 1 else lam
    ws = [_elem(F, g1), _elem(F, g2)]
    for j in range(3, n + 1):
        rows = [list(r) for r in gn1]
        rows[j - 1][1] = F.add(rows[j - 1][1], F.sub(lam, li))
        ws.append(_elem(F, rows))
    ws.append(_elem(F, gn1))
    ws.append(_elem(F, _ident(n)))
    return WitnessPackage("gl-lower", H, 1, _tuple(X), _tuple(Y), ws, {"lambda": lam})


def _gammal_core(F: FieldSpec, n: int, k: int, lam: int):
    """Tuples and (matrix, aut) witnesses of the n+3 construction in dimension n."""
    fr = F.frobenius
    lp = fr(lam, k)  # lambda^psi
    lpinv = fr(lam, -k)  # lambda^{psi^-1}
    li = F.inv(lam)
    tau = F.inv(F.sub(lam, 1))
    X = [_vec(F, n, {i: 1}) for i in range(1, n + 1)] + [_vec(F, n, {i: 1 for i in range(1, n + 1)})]
    X.append(_vec(F, n, {1: 1, 2: 1, 3: lam}))
    Y = list(X)
    X.append(_vec(F, n, {1: 1, 2: lam}))
    Y.append(_vec(F, n, {1: 1, 2: lp}))
    a1 = F.mul(tau, F.sub(lp, lam))
    h1 = _block(F, [[1, F.neg(a1)], [0, F.add(1, a1)]], n)
    a2 = F.mul(tau, F.sub(F.mul(lam, fr(li, k)), 1))
    h2 = _block(F, [[F.sub(1, a2), 0], [a2, 1]], n)
    a3 = F.mul(tau, F.sub(F.mul(lam, fr(li, -k)), 1))
    h3 = _block(F, [[F.sub(1, a3), 0, 0], [0, F.sub(1, a3), 0], [a3, a3, 1]], n)
    mu = F.mul(li, lpinv)
    dmu = _ident(n)
    dmu[2][2] = mu
    ws = [(h1, 0), (h2, 0), (h3, k)]
    for j in range(4, n + 1):
        rows = [list(r) for r in dmu]
        rows[j - 1][2] = F.add(rows[j - 1][2], F.sub(1, mu))
        ws.append((rows, k))
    ws.append((dmu, k))
    ws.append((_ident(n), k))
    ws.append((_ident(n), 0))
    return X, Y, ws


def _pick_lambda(F: FieldSpec, k: int, lam: Optional[int]) -> int:
    if lam is not None:
        if lam in (0, 1):
            raise HypothesisError("lambda must differ from 0 and 1")
        if F.frobenius(lam, k) == lam:
            raise HypothesisError("lambda must be moved by psi")
        return lam
    for x in range(2, F.q):
        if F.frobenius(x, k) != x:
            return x
    raise HypothesisError("no lambda is moved by psi (prime field or trivial psi)")


def w_gammal(n: int, F: FieldSpec, psi_exponent: int, H: Optional[GroupSpec] = None, lam: Optional[int] = None) -> WitnessPackage:
    """Length n+3 package for GL_n < H <= GammaL_n containing psi."""
    if n < 3:
        raise HypothesisError("n >= 3 required")
    k = psi_exponent % F.f
    if k == 0:
        raise HypothesisError("psi must be a nontrivial automorphism")
    if H is None:
        H = group_create("GammaL", n, F)
    _check_group(H, n)
    if len(H.dets_for_aut(0)) != F.q - 1:
        raise HypothesisError("H must contain GL_n")
    if (1, k) not in H.quotient:
        raise HypothesisError("psi does not lie in H")
    lam = _pick_lambda(F, k, lam)
    X, Y, ws = _gammal_core(F, n, k, lam)
    return WitnessPackage(
        "gammal",
        H,
        1,
        _tuple(point(F, v) for v in X),
        _tuple(point(F, v) for v in Y),
        [_elem(F, r, a) for r, a in ws],
        {"lambda": lam, "psi": k},
    )


def w_general_np2(n: int, F: FieldSpec, H: GroupSpec) -> WitnessPackage:
    """The n+3 construction in the first n-1 coordinates: length n+2, H not in GL."""
    if n < 4:
        raise HypothesisError("n >= 4 required")
    _check_group(H, n)
    auts = [i for i in H.aut_exponents() if i]
    if not auts:
        raise HypothesisError("H must not lie in GL_n")
    k = auts[0]
    lam = _pick_lambda(F, k, None)
    Xs, Ys, ws = _gammal_core(F, n - 1, k, lam)
    pad = lambda v: list(v) + [0]
    out = []
    from .linalg import det_raw

    for rows, a in ws:
        d = det_raw(F, rows)
        target = 1 if a == 0 else H.dets_for_aut(a)[0]
        full = [list(r) + [0] for r in rows] + [[0] * (n - 1) + [F.div(target, d)]]
        out.append(_elem(F, full, a))
    return WitnessPackage(
        "general-np2",
        H,
        1,
        _tuple(point(F, pad(v)) for v in Xs),
        _tuple(point(F, pad(v)) for v in Ys),
        out,
        {"lambda": lam, "psi": k},
    )


def psl_lower_excluded(H: GroupSpec) -> set[int]:
    """Values det(g z)^psi over g psi in H and scalars z, via power classes."""
    F, n = H.field, H.n
    g = math.gcd(n, F.q - 1)
    classes = {F.log(F.frobenius(a, i)) % g for a, i in H.quotient}
    return {x for x in range(1, F.q) if F.log(x) % g in classes}


def psl_lower_admissible(H: GroupSpec) -> list[int]:
    F = H.field
    bad = psl_lower_excluded(H)
    return [x for x in range(1, F.q) if x not in bad]


def w_psl_lower(n: int, F: FieldSpec, H: GroupSpec) -> WitnessPackage:
    if n < 4:
        raise HypothesisError("n >= 4 required")
    if F.q < 3:
        raise HypothesisError("|F| >= 3 required")
    _check_group(H, n)
    adm = psl_lower_admissible(H)
    if not adm:
        raise HypothesisError("no admissible alpha: the determinant classes of H cover F*/F^(x n)")
    alpha = adm[0]
    ai = F.inv(alpha)
    X = [_pt(F, n, {i: 1}) for i in range(2, n + 1)] + [_pt(F, n, {1: 1, i: 1}) for i in range(2, n + 1)]
    Y = [_pt(F, n, {i: 1}) for i in range(2, n + 1)] + [_pt(F, n, {1: alpha, i: 1}) for i in range(2, n + 1)]

    def h(i):
        rows = _ident(n)
        rows[0][0] = alpha
        rows[i - 1][i - 1] = ai
        return rows

    ws = []
    for j in range(1, n):
        kk = j + 1
        rows = h(kk)
        rows[kk - 1][0] = F.add(rows[kk - 1][0], F.sub(1, alpha))
        ws.append(_elem(F, rows))
    for j in range(n, 2 * n - 1):
        ws.append(_elem(F, h(j + 2 - n)))
    return WitnessPackage("psl-lower", H, 1, _tuple(X), _tuple(Y), ws, {"alpha": alpha})


def w_mspaces(n: int, m: int, F: FieldSpec, H: GroupSpec) -> WitnessPackage:
    """Length mn - m^2 + 1 package on m-spaces, n >= 2m >= 4."""
    if m < 2 or n < 2 * m:
        raise HypothesisError("n >= 2m >= 4 required")
    _check_group(H, n)
    neg1 = F.neg(1)

    def B(i):
        return [{t: 1} for t in range(1, m + 1) if t != i]

    U = [(i, j, _span(F, n, B(i) + [{j: 1}])) for i in range(1, m + 1) for j in range(m + 1, n)]
    V = [_span(F, n, B(i) + [{i: 1, n: 1}]) for i in range(1, m + 1)]
    W = [_span(F, n, B(i) + [{n: 1}]) for i in range(1, m + 1)]
    pairs = [{1: 1, t: 1} for t in range(2, m + 1)]
    x_last = _span(F, n, pairs + [{i: 1 for i in range(1, n + 1)}])
    ylast_vec = {i: 1 for i in range(m + 1, n + 1)}
    ylast_vec[1] = neg1
    y_last = _span(F, n, pairs + [ylast_vec])
    X = [u for _, _, u in U] + V + [x_last]
    Y = [u for _, _, u in U] + W + [y_last]
    alpha = {r: (neg1 if r == 1 else 1) for r in range(1, m + 1)}

    def minus_z(row):
        for t in range(m):
            row[t] = F.sub(row[t], 1)
        return row

    ws = []
    for r, s, _ in U:
        rows = _ident(n)
        rows[s - 1][r - 1] = alpha[r]
        rows[n - 1] = minus_z(rows[n - 1])
        ws.append(_elem(F, rows))
    for r in range(1, m + 1):
        rows = _ident(n)
        rows[n - 1] = minus_z(rows[n - 1])
        rows[n - 1][r - 1] = F.add(rows[n - 1][r - 1], alpha[r])
        ws.append(_elem(F, rows))
    rows = _ident(n)
    rows[n - 1] = minus_z(rows[n - 1])
    ws.append(_elem(F, rows))
    return WitnessPackage("mspaces", H, m, _tuple(X), _tuple(Y), ws)


CONSTRUCTIONS: dict[str, Callable] = {
    "general-n": w_general_n,
    "n2-case-a": w_n2_case_a,
    "n2-case-b": w_n2_case_b,
    "psl3": w_psl3,
    "gl-lower": w_gl_lower,
    "gammal": w_gammal,
    "general-np2": w_general_np2,
    "psl-lower": w_psl_lower,
    "mspaces": w_mspaces,
}


def build(tag: str, n: int, F: FieldSpec, H: Optional[GroupSpec] = None, m: int = 1, psi: Optional[int] = None) -> WitnessPackage:
    """Dispatch by tag with a uniform signature (used by the CLI and the grid)."""
    if tag not in CONSTRUCTIONS:
        raise HypothesisError(f"unknown construction {tag!r}")
    if H is None and tag != "gl-lower":
        H = group_create("GammaL" if tag == "gammal" else "SL", n, F)
    if tag == "general-n":
        return w_general_n(n, F, H)
    if tag == "n2-case-a":
        return w_n2_case_a(F.q, H)
    if tag == "n2-case-b":
        return w_n2_case_b(F.q, H)
    if tag == "psl3":
        return w_psl3(F, H)
    if tag == "gl-lower":
        if H is not None and H.mode != "GL" and H.quotient != group_create("GL", n, F).quotient:
            raise HypothesisError("gl-lower is stated for H = GL_n only")
        return w_gl_lower(n, F)
    if tag == "gammal":
        return w_gammal(n, F, psi if psi is not None else 1, H)
    if tag == "general-np2":
        return w_general_np2(n, F, H)
    if tag == "psl-lower":
        return w_psl_lower(n, F, H)
    return w_mspaces(n, m, F, H)


def applicable_packages(H: GroupSpec, m: int = 1) -> list[WitnessPackage]:
    """Every construction whose hypotheses hold for (H, m), one per psi choice."""
    F, n = H.field, H.n
    out: list[WitnessPackage] = []

    def attempt(fn, *args):
        try:
            out.append(fn(*args))
        except HypothesisError:
            pass

    if m >= 2:
        attempt(w_mspaces, n, m, F, H)
        return out
    if n >= 2:
        attempt(w_general_n, n, F, H)
    if n == 2:
        attempt(w_n2_case_a, F.q, H)
        attempt(w_n2_case_b, F.q, H)
    if n == 3:
        attempt(w_psl3, F, H)
    if H.quotient == group_create("GL", n, F).quotient:
        attempt(w_gl_lower, n, F)
    for k in H.aut_exponents():
        if k:
            attempt(w_gammal, n, F, k, H)
    attempt(w_general_np2, n, F, H)
    attempt(w_psl_lower, n, F, H)
    return out


def best_lower(H: GroupSpec, m: int = 1) -> tuple[int, Optional[str]]:
    """Largest verified witness length for (H, m), with its tag."""
    best, tag = 1, None
    for pkg in applicable_packages(H, m):
        if pkg.k > best and verify(pkg).passed:
            best, tag = pkg.k, pkg.tag
    return best, tag
