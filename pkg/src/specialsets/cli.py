"""Command-line entry point.

Exit status: 0 on pass or success, 1 when a check fails with a witness,
2 on usage errors (including an unsupported q).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .constructions import (
    SAlphaBetaParams,
    elliptic_quadric,
    elliptic_quadric_with_p,
    find_nonclassical_params,
    s_alpha_beta,
    standard_form,
    veronesean,
)
from .field import FieldError, field_for_q, prime_power
from .hermitian import space_for_q
from .projective import PointSet
from .verify import STATEMENTS, Report, check_special_set, run_statement

MAX_ORDER = 2 ** 20
FAMILIES = ("veronesean", "elliptic", "elliptic+P", "standard_form", "s_alpha_beta", "nonclassical")
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


def parse_q(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer, got {text!r}")
    try:
        p, _ = prime_power(q)
    except (FieldError, ValueError):
        raise argparse.ArgumentTypeError(f"q = {q} is not a prime power")
    if p == 2:
        raise argparse.ArgumentTypeError(f"q must be odd, got {q}")
    if q * q > MAX_ORDER:
        raise argparse.ArgumentTypeError(f"q^2 = {q * q} exceeds the supported field size {MAX_ORDER}")
    return q


def _element(F, text: str) -> int:
    """An element given as a label ("7") or as coefficients ("1,2")."""
    if "," in text or text.startswith("["):
        coeffs = [int(c) for c in text.strip("[]").split(",") if c.strip()]
        if any(not 0 <= c < F.p for c in coeffs) or len(coeffs) > F.n:
            raise UsageError(f"bad coefficient vector {text!r}")
        return F.from_coeffs(coeffs)
    v = int(text)
    if not 0 <= v < F.order:
        raise UsageError(f"element label {v} out of range for GF({F.order})")
    return v


def build_family(args) -> PointSet:
    F = field_for_q(args.q)
    fam = args.family
    if fam == "veronesean":
        return veronesean(F)
    if fam == "elliptic":
        return elliptic_quadric(F)
    if fam == "elliptic+P":
        return elliptic_quadric_with_p(F)
    if fam == "standard_form":
        if args.x is None:
            raise UsageError("--x is required for standard_form")
        return standard_form(F, _element(F, args.x))
    if fam == "s_alpha_beta":
        if args.alpha is None or args.beta is None:
            raise UsageError("--alpha and --beta are required for s_alpha_beta")
        return s_alpha_beta(F, SAlphaBetaParams.make(F, _element(F, args.alpha), _element(F, args.beta)))
    if fam == "nonclassical":
        return s_alpha_beta(F, find_nonclassical_params(F))
    raise UsageError(f"unknown family {fam!r}")


# -- output -------------------------------------------------------------------

def _emit_points(F, S: PointSet, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(S.to_json(F), separators=(",", ":")) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x0", "x1", "x2", "x3"])
        for X in S:
            w.writerow([" ".join(map(str, F.coeffs(c))) for c in X])
    else:
        for X in S:
            out.write("(" + ", ".join(F.format(c) for c in X) + ")\n")


def _emit_report(r: Report, fmt: str, out) -> None:
    if fmt == "json":
        out.write(r.to_json() + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["statement_id", "q", "name", "value"])
        w.writerow([r.statement_id, r.q, "verdict", r.verdict])
        for k, v in r.counts.items():
            w.writerow([r.statement_id, r.q, k, v])
    else:
        out.write(f"{r.statement_id} q={r.q}: {r.verdict} ({r.coverage})\n")
        for k, v in r.counts.items():
            out.write(f"  {k} = {v}\n")
        for wit in r.to_dict()["witnesses"][:3]:
            out.write(f"  witness: {json.dumps(wit)}\n")


# -- subcommands ----------------------------------------------------------------

def cmd_construct(args, out) -> int:
    F = field_for_q(args.q)
    _emit_points(F, build_family(args), args.format, out)
    return 0


def cmd_check(args, out) -> int:
    hs = space_for_q(args.q)
    F = hs.F
    if args.points:
        with open(args.points) as fh:
            S = PointSet.from_json(F, json.load(fh))
    elif args.family:
        S = build_family(args)
    else:
        raise UsageError("give --points FILE or --family NAME")
    r = check_special_set(hs, S)
    _emit_report(r, args.format, out)
    return 0 if r.passed else 1


def cmd_verify(args, out) -> int:
    ids = sorted(STATEMENTS) if args.statement == "all" else [args.statement]
    status = 0
    for sid in ids:
        if sid not in STATEMENTS:
            raise UsageError(f"unknown statement {sid!r}; known: {', '.join(sorted(STATEMENTS))}")
        r = run_statement(sid, args.q, args.seed)
        _emit_report(r, args.format, out)
        status = max(status, 0 if r.passed else 1)
    return status


def cmd_search(args, out) -> int:
    from .search import SearchConfig, search_main1_sets, search_special_sets

    cfg = SearchConfig(
        q=args.q,
        mode=args.mode,
        symmetry_breaking=not args.no_symmetry,
        max_solutions=args.max_solutions,
        thread_count=args.threads,
        checkpoint_path=args.checkpoint,
        checkpoint_every=args.checkpoint_every,
        max_depth=args.max_depth,
    )
    try:
        cfg.validate()
    except ValueError as exc:
        raise UsageError(str(exc))
    if cfg.mode == "main1_constrained":
        r = search_main1_sets(cfg)
        _emit_report(r, args.format, out)
        return 0 if r.passed else 1
    F = field_for_q(cfg.q)

    def progress(ev):
        if args.progress and ev.get("event") == "checkpoint":
            out.write(json.dumps(ev) + "\n")
            out.flush()

    sets, r = search_special_sets(cfg, progress)
    for S in sets:
        out.write(json.dumps({"event": "solution", "points": S.to_json(F)}, separators=(",", ":")) + "\n")
    _emit_report(r, "json" if args.format == "json" else args.format, out)
    return 0 if r.passed else 1


def cmd_counts(args, out) -> int:
    r = run_statement("counts", args.q, args.seed)
    _emit_report(r, args.format, out)
    return 0 if r.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specialsets", description="Special sets of the Hermitian surface H(3,q^2).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, default_format="json"):
        p.add_argument("--q", type=parse_q, required=True)
        p.add_argument("--format", choices=FORMATS, default=default_format)
        p.add_argument("--seed", type=int, default=0)

    def family_args(p, required):
        p.add_argument("--family", choices=FAMILIES, required=required)
        p.add_argument("--x", help="parameter of standard_form (label or coefficients)")
        p.add_argument("--alpha")
        p.add_argument("--beta")

    p = sub.add_parser("construct", help="print a point set")
    common(p)
    family_args(p, True)

    p = sub.add_parser("check", help="test whether a set is special")
    common(p)
    family_args(p, False)
    p.add_argument("--points", help="JSON file of points as coefficient vectors")

    p = sub.add_parser("verify", help="run a statement check")
    common(p)
    p.add_argument("--statement", default="all")

    p = sub.add_parser("search", help="exhaustive search")
    common(p)
    p.add_argument("--mode", choices=("special_set", "main1_constrained"), default="special_set")
    p.add_argument("--checkpoint")
    p.add_argument("--checkpoint-every", type=int, default=50_000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-solutions", type=int)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--progress", action="store_true", help="stream checkpoint events")

    p = sub.add_parser("counts", help="triple counts and stabilizer size")
    common(p, "csv")
    return ap


COMMANDS = {"construct": cmd_construct, "check": cmd_check, "verify": cmd_verify,
            "search": cmd_search, "counts": cmd_counts}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


def run_captured(argv: Sequence[str]) -> tuple[int, str]:
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue()
