"""The witness grid: every in-hypothesis (construction, n, q, H, m) point."""

from __future__ import annotations

from conftest import GF
from relcomplex.groupaction import SemilinearElem, group_create
from relcomplex.linalg import diag
from relcomplex import witnesses as W

GRID_Q = (2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27)
GRID_N = (2, 3, 4, 5, 6)


def groups(n: int, q: int):
    """All distinct param groups, plus the twisted diagonal group when q = 9."""
    F = GF(q)
    seen, out = set(), []
    for d in range(1, q):
        if (q - 1) % d:
            continue
        for e in range(1, F.f + 1):
            if F.f % e:
                continue
            H = group_create("param", n, F, d=d, e=e)
            if H.quotient not in seen:
                seen.add(H.quotient)
                out.append(H)
    if q == 9:
        x = SemilinearElem(diag(F, [F.omega] + [1] * (n - 1)), 1)
        H = group_create("explicit", n, F, gens=[x])
        if H.quotient not in seen:
            out.append(H)
    return out


def brute_admissible_alpha(H) -> list[int]:
    """alpha outside {phi^i(a * lam^n)} over (a, i) in Q_H and nonzero lam."""
    F, n = H.field, H.n
    bad = set()
    for a, i in H.quotient:
        for lam in range(1, F.q):
            bad.add(F.frobenius(F.mul(a, F.pow(lam, n)), i))
    return [x for x in range(1, F.q) if x not in bad]


def points():
    """Yield (label, builder) for every in-hypothesis grid point."""
    for q in GRID_Q:
        F = GF(q)
        for n in GRID_N:
            gl_q = group_create("GL", n, F).quotient
            for H in groups(n, q):
                g = H.describe()
                dets_square = all(F.is_power(a, 2) for a, _ in H.quotient)
                auts = [k for k in H.aut_exponents() if k]
                yield f"general-n n={n} q={q} {g}", lambda H=H, n=n, F=F: W.w_general_n(n, F, H)
                if n == 2 and q >= 8 and (q % 2 == 0 or not dets_square):
                    yield f"n2-case-a q={q} {g}", lambda H=H, q=q: W.w_n2_case_a(q, H)
                if n == 2 and q % 2 == 1 and q > 9 and dets_square:
                    yield f"n2-case-b q={q} {g}", lambda H=H, q=q: W.w_n2_case_b(q, H)
                if n == 3 and q >= 7 and (q - 1) % 3 == 0:
                    yield f"psl3 q={q} {g}", lambda H=H, F=F: W.w_psl3(F, H)
                if n >= 3 and q >= 4 and H.quotient == gl_q:
                    yield f"gl-lower n={n} q={q}", lambda n=n, F=F: W.w_gl_lower(n, F)
                if n >= 3 and len(H.dets_for_aut(0)) == q - 1:
                    for k in auts:
                        yield f"gammal n={n} q={q} {g} psi={k}", lambda H=H, n=n, F=F, k=k: W.w_gammal(n, F, k, H)
                if n >= 4 and auts:
                    yield f"general-np2 n={n} q={q} {g}", lambda H=H, n=n, F=F: W.w_general_np2(n, F, H)
                if n >= 4 and q >= 3 and brute_admissible_alpha(H):
                    yield f"psl-lower n={n} q={q} {g}", lambda H=H, n=n, F=F: W.w_psl_lower(n, F, H)
                for m in range(2, n // 2 + 1):
                    yield f"mspaces n={n} m={m} q={q} {g}", lambda H=H, n=n, m=m, F=F: W.w_mspaces(n, m, F, H)


def run_grid(progress=None):
    """Build and verify every grid package; returns (count, failures, per-tag counts)."""
    failures, tags, count = [], {}, 0
    for label, build in points():
        count += 1
        tag = label.split()[0]
        tags[tag] = tags.get(tag, 0) + 1
        try:
            pkg = build()
            rep = W.verify(pkg)
            if not rep.passed:
                failures.append((label, rep.to_json()))
        except Exception as exc:  # a refusal inside the hypotheses is a failure too
            failures.append((label, repr(exc)))
        if progress:
            progress(label)
    return count, failures, tags
