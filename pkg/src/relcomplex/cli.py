"""Command-line front end: ``rc compute|bounds|witness|table``.

Exit codes: 0 success or match, 1 usage error, 2 interval-only result,
3 mismatch or failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .gf import FieldError, FieldSpec, field_create, field_from_order
from .groupaction import GroupError, GroupSpec, group_create, parse_generator_file
from .projective import DEFAULT_MAX_POINTS, ProjectiveError
from .relcomp import ActionHandle, ResourceError, _preset_name, rc_compute, theorem_bounds_for_group
from .witnesses import CONSTRUCTIONS, HypothesisError, best_lower, build, verify

EXIT_OK, EXIT_USAGE, EXIT_INTERVAL, EXIT_MISMATCH = 0, 1, 2, 3
DEFAULT_TABLE_BUDGET = 300.0
MAX_Q = 1 << 16


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    """Validated common settings; built before any computation starts."""

    command: str
    group: Optional[str]
    n: object
    q: object
    m: int
    max_omega: int
    budget_secs: Optional[float]
    threads: int
    fmt: str

    @classmethod
    def from_args(cls, args) -> RunConfig:
        cfg = cls(
            args.command, args.group, args.n, args.q, args.m, args.max_omega, args.budget_secs, args.threads, args.format
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.m < 1:
            raise UsageError("--m must be positive")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if self.max_omega < 1:
            raise UsageError("--max-omega must be positive")
        if self.budget_secs is not None and self.budget_secs <= 0:
            raise UsageError("--budget-secs must be positive")
        if isinstance(self.n, int) and self.n < 1:
            raise UsageError("--n must be positive")


def _field(args) -> FieldSpec:
    if args.q is not None:
        if args.p is not None or args.f is not None:
            raise UsageError("give either --q or --p/--f, not both")
        return field_from_order(args.q, max_q=MAX_Q)
    if args.p is None:
        raise UsageError("a field is required: --q or --p [--f]")
    return field_create(args.p, args.f or 1, max_q=MAX_Q)


def parse_group(desc: str, n: int, F: FieldSpec) -> GroupSpec:
    """Group descriptor: a preset, ``param:d,e`` or ``file:PATH``."""
    if desc.startswith("param:"):
        try:
            d, e = (int(t) for t in desc[6:].split(","))
        except ValueError:
            raise UsageError(f"bad param descriptor {desc!r}; expected param:d,e") from None
        return group_create("param", n, F, d=d, e=e)
    if desc.startswith("file:"):
        path = Path(desc[5:])
        if not path.is_file():
            raise UsageError(f"generator file {path} not found")
        return group_create("explicit", n, F, gens=parse_generator_file(path.read_text(), F))
    try:
        return group_create(_preset_name(desc), n, F)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_range(text: str) -> list[int]:
    """``5``, ``3..5`` or ``2,3,7``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows if len(rows) != 1 else rows[0], sort_keys=True) + "\n")
        return
    if not rows:
        return
    cols = list(rows[0].keys())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in r.items()})
        out.write(buf.getvalue())
        return
    for r in rows:
        out.write("  ".join(f"{k}={v}" for k, v in r.items()) + "\n")


# -- commands -------------------------------------------------------------


def cmd_rc(args, out) -> int:
    F = _field(args)
    if args.n is None:
        raise UsageError("--n is required")
    H = parse_group(args.group, int(args.n), F)
    handle = ActionHandle.for_group(H, args.m, max_points=args.max_omega)
    rep = rc_compute(
        handle,
        k_max_override=args.k_max,
        workers=args.threads,
        budget_secs=args.budget_secs,
        with_ibase=args.ibase,
    )
    body = rep.to_json(include_timing=not args.no_timing)
    if args.format == "json":
        out.write(json.dumps(body, sort_keys=True) + "\n")
    else:
        flat = {k: v for k, v in body.items() if k not in ("witness", "bounds")}
        if rep.bounds:
            flat["bounds"] = [rep.bounds.lower, rep.bounds.upper]
        _emit([flat], args.format, out)
    return EXIT_OK if rep.exact else EXIT_INTERVAL


def cmd_bounds(args, out) -> int:
    ns = parse_range(args.n) if args.n else None
    if ns is None:
        raise UsageError("--n is required")
    if args.q is not None:
        qs = parse_range(args.q)
    elif args.p is not None:
        qs = [args.p ** (args.f or 1)]
    else:
        raise UsageError("--q is required")
    rows = []
    for q in qs:
        F0 = field_from_order(q, max_q=MAX_Q)
        for n in ns:
            if not 1 <= args.m <= n:
                continue
            H = parse_group(args.group, n, F0)
            b = theorem_bounds_for_group(H, args.m)
            rows.append(
                {
                    "n": n,
                    "q": q,
                    "m": args.m,
                    "group": args.group,
                    "lower": b.lower,
                    "upper": b.upper,
                    "lower_src": b.lower_src,
                    "upper_src": b.upper_src,
                }
            )
    if not rows:
        raise UsageError("no valid (n, m) in the requested ranges")
    if args.format == "json":
        out.write(json.dumps(rows, sort_keys=True) + "\n")
    else:
        _emit(rows, args.format, out)
    return EXIT_OK


def cmd_witness(args, out) -> int:
    F = _field(args)
    tag = args.tag
    n = args.n
    if n is None:
        n = 2 if tag.startswith("n2") else 3 if tag == "psl3" else None
    if n is None:
        raise UsageError(f"--n is required for {tag}")
    H = parse_group(args.group, n, F) if args.group else None
    pkg = build(tag, n, F, H, m=args.m, psi=args.psi)
    rep = verify(pkg)
    out.write(json.dumps({"package": pkg.to_json(), "report": rep.to_json()}, sort_keys=True) + "\n")
    return EXIT_OK if rep.passed else EXIT_MISMATCH


# Reference values: (label, preset, n, q, m, expected).
REFERENCE_TABLE = [
    ("PGL_2(3)/Omega_1", "PGL", 2, 3, 1, 2),
    ("PSigmaL_2(9)/Omega_1", "PSigmaL", 2, 9, 1, 3),
    ("PSL_4(2)/Omega_2", "PSL", 4, 2, 2, 5),
    ("PSL_4(3)/Omega_2", "PSL", 4, 3, 2, 6),
    ("PGL_4(3)/Omega_2", "PGL", 4, 3, 2, 8),
    ("PSL_4(4)/Omega_2", "PSL", 4, 4, 2, 8),
    ("PGammaL_4(4)/Omega_2", "PGammaL", 4, 4, 2, 8),
    ("PGammaL_2(243)/Omega_1", "PGammaL", 2, 243, 1, 5),
    ("PGammaL_4(9)/Omega_1", "PGammaL", 4, 9, 1, 8),
    ("PGammaL_3(64)/Omega_1", "PGammaL", 3, 64, 1, 6),
]


def table_row(label, preset, n, q, m, expected, budget, threads, max_omega) -> dict:
    F = field_from_order(q, max_q=MAX_Q)
    H = group_create(_preset_name(preset), n, F)
    row = {"case": label, "expected": expected, "computed": None, "interval": None, "status": None}
    try:
        handle = ActionHandle.for_group(H, m, max_points=max_omega)
    except (ResourceError, ProjectiveError):
        b = theorem_bounds_for_group(H, m)
        row["interval"] = [max(b.lower, best_lower(H, m)[0]), b.upper]
        row["status"] = "skipped(budget)"
        return row
    wl = best_lower(H, m)[0]
    rep = rc_compute(handle, workers=threads, budget_secs=budget, with_height=False, witness_lower=wl)
    if rep.exact:
        row["computed"] = rep.rc
        row["status"] = "match" if rep.rc == expected else "MISMATCH"
    else:
        row["interval"] = [rep.rc_lower, rep.rc_upper]
        ok = rep.rc_lower <= expected and (rep.rc_upper is None or expected <= rep.rc_upper)
        row["status"] = "interval-consistent" if ok else "MISMATCH"
    return row


def cmd_table(args, out) -> int:
    if args.suite != "paper":
        raise UsageError(f"unknown suite {args.suite!r}")
    budget = args.budget_secs if args.budget_secs is not None else DEFAULT_TABLE_BUDGET
    rows = []
    for spec_row in REFERENCE_TABLE:
        if args.cases and spec_row[0] not in args.cases:
            continue
        rows.append(table_row(*spec_row, budget=budget, threads=args.threads, max_omega=args.max_omega))
        out.flush()
    if args.format == "json":
        out.write(json.dumps(rows, sort_keys=True) + "\n")
    else:
        _emit(rows, args.format, out)
    if any(r["status"] == "MISMATCH" for r in rows):
        return EXIT_MISMATCH
    if any(r["status"] != "match" for r in rows):
        return EXIT_INTERVAL
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def _common(p: argparse.ArgumentParser, n_type=int, q_type=int):
    p.add_argument("--group", default="PGL", help="PSL|PGL|PSigmaL|PGammaL|param:d,e|file:PATH")
    p.add_argument("--n", type=n_type)
    p.add_argument("--q", type=q_type)
    p.add_argument("--p", type=int)
    p.add_argument("--f", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--max-omega", type=int, default=DEFAULT_MAX_POINTS)
    p.add_argument("--budget-secs", type=float)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rc", description="Relational complexity of classical groups on subspaces.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("compute", help="exact RC, height and bounds")
    _common(p)
    p.add_argument("--k-max", type=int)
    p.add_argument("--ibase", action="store_true", help="also compute the irredundant base size")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")
    p.set_defaults(func=cmd_rc)
    p = sub.add_parser("bounds", help="theorem bounds, optionally over ranges of n and q")
    _common(p, n_type=str, q_type=str)
    p.set_defaults(func=cmd_bounds)
    p = sub.add_parser("witness", help="build and verify a witness package")
    _common(p)
    p.set_defaults(group=None)
    p.add_argument("--tag", required=True, choices=sorted(CONSTRUCTIONS))
    p.add_argument("--psi", type=int, help="Frobenius exponent for the gammal construction")
    p.set_defaults(func=cmd_witness)
    p = sub.add_parser("table", help="compare against reference values")
    _common(p)
    p.add_argument("--suite", default="paper")
    p.add_argument("--cases", nargs="*", help="restrict to these case labels")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        RunConfig.from_args(args)
        return args.func(args, out)
    except UsageError as exc:
        print(f"rc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FieldError, GroupError, HypothesisError, ProjectiveError, ValueError) as exc:
        print(f"rc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"rc: resource ceiling: {exc}", file=sys.stderr)
        return EXIT_INTERVAL


if __name__ == "__main__":
    sys.exit(main())
