"""Command-line interface.

Exit codes: 0 success or verified, 1 refuted or property false, 2 usage
error, 3 input error, 4 internal failure.  Results go to stdout, diagnostics
to stderr.  With ``--json`` stdout carries one JSON document whose keys are
drawn from: verdict, witness, instance, engine, point, trace, counts, millis.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fix
from .classes import CLASSES, check_complete, normalize_class
from .core import members
from .errors import CapExceeded, InputError, InternalFailure, PreconditionViolation, RelfixError
from .props import PROPERTY_NAMES, check_property
from .search import THEOREMS, find_counterexample, verify_theorems
from .textio import load_model

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Usage(Exception):
    pass


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def _load(path: str):
    try:
        return load_model(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def cmd_check(args) -> int:
    R = _load(args.file).relset(args.relset)
    if args.props == "all":
        wanted = list(PROPERTY_NAMES)
    else:
        wanted = [p.strip() for p in args.props.split(",") if p.strip()]
        bad = [p for p in wanted if p not in PROPERTY_NAMES]
        if bad:
            raise _Usage(f"unknown properties: {', '.join(bad)}")
    results = [(p, check_property(R, p)) for p in wanted]
    # A full classification is informational; an explicit list is a query.
    verdict = args.props == "all" or all(w for _, w in results)
    payload = {
        "verdict": verdict,
        "relset": args.relset,
        "properties": [{"property": p, "witness": w.to_json(R)} for p, w in results],
    }
    _emit(args, payload, [f"{p}: {w.describe(R)}" for p, w in results])
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_complete(args) -> int:
    R = _load(args.file).relset(args.relset)
    cls = normalize_class(args.cls)
    w = check_complete(R, cls)
    payload = {"verdict": bool(w), "relset": args.relset, "class": cls, "witness": w.to_json(R)}
    line = f"{cls}-complete: {w.describe(R)}"
    if not w:
        line += " (no supremum)"
    _emit(args, payload, [line])
    return EXIT_OK if w else EXIT_FALSE


def _relation_line(R, p: int, f) -> str:
    a, b = R.names[p], R.names[f.target[p]]
    if f.target[p] == p:
        return f"f {a} = {a}"
    return f"f {a} ∼ {a} (f {a} = {b})"


def cmd_fixpoint(args) -> int:
    model = _load(args.file)
    R = model.relset(args.relset)
    rel_name, f = model.endo_map(args.map)
    if rel_name != args.relset:
        raise InputError(f"map {args.map!r} is declared over {rel_name!r}, not {args.relset!r}")
    trace: list[str] = []
    engine = args.engine
    if engine == "sm":
        points, kind = [fix.sm_qfp(R, f, trace=trace)], "qfp"
    elif engine == "derivation":
        points, kind = [fix.derivation_fp(R, f, trace=trace)], "fixed point"
    elif engine == "quotient":
        points, kind = [fix.least_qfp_attractive(R, f, trace=trace)], "least qfp"
    else:
        if args.bottom is None:
            bots = fix.bottoms(R)
            if not bots:
                raise PreconditionViolation("bottom element", "the relation has none")
            bot = members(bots)[0]
        elif args.bottom not in R.index:
            raise InputError(f"unknown element {args.bottom!r}")
        else:
            bot = R.index[args.bottom]
        points, kind = members(fix.kleene_qfps(R, f, bot, trace=trace)), "qfp"
    lines = [f"{kind} {R.names[p]}" for p in points] + [_relation_line(R, p, f) for p in points]
    payload = {
        "verdict": True,
        "engine": engine,
        "point": R.names[points[0]],
        "points": [R.names[p] for p in points],
        "trace": trace,
    }
    _emit(args, payload, lines + ["trace:"] + [f"  {t}" for t in trace])
    return EXIT_OK


def _report_lines(r) -> list[str]:
    sizes = ", ".join(f"n={n}: {c['examined']} {c['mode']}" for n, c in r.counts.items())
    out = [f"{r.name}: {r.verdict} ({r.examined} instances; {sizes or 'no sizes'})"]
    if r.instance is not None:
        out += ["  " + line for line in r.instance.to_text().splitlines()]
    for v in r.violations:
        out.append(f"  violation: {v['message']}")
    return out


def cmd_search(args) -> int:
    c = _load(args.file).conjecture(args.conjecture)
    r = find_counterexample(c, args.max_size, args.budget, args.seed, args.jobs)
    payload = r.to_json(args.timing)
    _emit(args, payload, _report_lines(r) + ([f"millis: {r.millis}"] if args.timing else []))
    return EXIT_FALSE if r.verdict == "refuted" else EXIT_OK


def cmd_verify(args) -> int:
    names = None
    if args.theorem:
        known = {t.name for t in THEOREMS}
        bad = [t for t in args.theorem if t not in known]
        if bad:
            raise _Usage(f"unknown theorems: {', '.join(bad)}")
        names = args.theorem
    reports = verify_theorems(args.max_size, args.budget, args.seed, args.jobs, args.min_size, names)
    ok = all(r.ok for r in reports)
    payload = {"verdict": ok, "reports": [r.to_json(args.timing) for r in reports]}
    lines = [line for r in reports for line in _report_lines(r)]
    if args.timing:
        lines.append(f"millis: {sum(r.millis or 0 for r in reports)}")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FALSE


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relfix", description="Fixed points over finite related sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, json_only=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if not json_only:
            p.add_argument("--jobs", type=_positive, default=1, help="parallel worker processes")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--timing", action="store_true", help="include wall time in reports")

    p = sub.add_parser("check", help="classify a relation")
    p.add_argument("file")
    p.add_argument("--relset", required=True)
    p.add_argument("--props", default="all", help="'all' or a comma-separated list")
    common(p, json_only=True)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("complete", help="check class-completeness")
    p.add_argument("file")
    p.add_argument("--relset", required=True)
    p.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    common(p, json_only=True)
    p.set_defaults(run=cmd_complete)

    p = sub.add_parser("fixpoint", help="run a fixed-point engine")
    p.add_argument("file")
    p.add_argument("--relset", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--engine", required=True, choices=("sm", "derivation", "quotient", "kleene"))
    p.add_argument("--bottom", help="start element for the kleene engine")
    common(p, json_only=True)
    p.set_defaults(run=cmd_fixpoint)

    p = sub.add_parser("search", help="look for a counterexample to a conjecture")
    p.add_argument("file")
    p.add_argument("--conjecture", required=True)
    p.add_argument("--max-size", type=_nonneg, required=True)
    p.add_argument("--budget", type=_positive, default=None,
                   help="sample sizes whose raw instance count exceeds this")
    common(p)
    p.set_defaults(run=cmd_search)

    p = sub.add_parser("verify-theorems", help="check every theorem on small models")
    p.add_argument("--max-size", type=_nonneg, default=3)
    p.add_argument("--min-size", type=_nonneg, default=0)
    p.add_argument("--budget", type=_positive, default=100_000)
    p.add_argument("--theorem", action="append", help="restrict to named theorems (repeatable)")
    common(p)
    p.set_defaults(run=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except _Usage as exc:
        print(f"relfix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"relfix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionViolation as exc:
        print(f"relfix: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (InputError, CapExceeded) as exc:
        print(f"relfix: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalFailure, RelfixError) as exc:
        print(f"relfix: internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"relfix: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
