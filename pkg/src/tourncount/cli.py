"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 cap exceeded, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import experiments as ex
from .exact import (
    CapExceededError,
    count_hamilton_cycles,
    count_hamilton_paths,
    path_cover_profile,
)
from .tournament import (
    InvalidTournamentError,
    compose_c3,
    make_random,
    make_transitive,
    read_trn,
    serialize,
    write_composition,
)

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_SELFTEST = 0, 1, 2, 3


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _flat_csv(record: dict) -> str:
    return _dump_csv(list(record), [["" if v is None else v for v in record.values()]])


def cmd_count(args) -> tuple[str, int]:
    t = read_trn(args.file)
    if args.what == "cycles":
        out = {"n": t.n, "count": str(count_hamilton_cycles(t, args.cap))}
    elif args.what == "paths":
        out = {"n": t.n, "count": str(count_hamilton_paths(t, args.cap))}
    else:
        prof = path_cover_profile(t, args.cap)
        out = {"n": t.n, "counts": [str(c) for c in prof.as_list()]}
    if args.format == "csv":
        if "counts" in out:
            return _dump_csv(["k", "count"], [[k, c] for k, c in enumerate(out["counts"], 1)]), EXIT_OK
        return _flat_csv(out), EXIT_OK
    return _dump_json(out), EXIT_OK


def cmd_triangular(args) -> tuple[str, int]:
    rep = ex.triangular_report(args.m1, args.m2, args.m3, args.mode, args.seed, args.cap)
    text = _flat_csv(rep) if args.format == "csv" else _dump_json(rep)
    return text, EXIT_OK


def cmd_convergence(args) -> tuple[str, int]:
    rows = ex.convergence_table(args.target, args.sizes, args.dps)
    if args.format == "json":
        return _dump_json([
            {"m": r.m, "exact_log": r.exact_log, "asymptotic_log": r.asymptotic_log,
             "ratio": r.ratio_text}
            for r in rows
        ]), EXIT_OK
    return _dump_csv(["m", "exact_log", "asymptotic_log", "ratio"],
                     [r.csv_fields() for r in rows]), EXIT_OK


def cmd_montecarlo(args) -> tuple[str, int]:
    rep = ex.run_montecarlo(args.kind, args.n, args.samples, args.seed, args.cap, args.jobs)
    d = rep.to_dict()
    return (_flat_csv(d) if args.format == "csv" else _dump_json(d)), EXIT_OK


def cmd_selftest(args) -> tuple[str, int]:
    results = ex.run_selftest(args.seed, corrupt=args.corrupt)
    ok = all(r.passed for r in results)
    if args.format == "csv":
        text = _dump_csv(["property", "passed", "detail"],
                         [[r.name, r.passed, r.detail] for r in results])
    else:
        text = _dump_json({
            "passed": ok,
            "properties": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                           for r in results],
        })
    return text, EXIT_OK if ok else EXIT_SELFTEST


def cmd_generate(args) -> tuple[str, int]:
    def one(i: int):
        if args.kind == "transitive":
            return make_transitive(args.m)
        return make_random(args.m, ex.derive_seed(args.seed, i) if args.c3 else args.seed)

    if args.c3:
        comp = compose_c3(one(0), one(1), one(2))
        if args.out is None:
            raise InvalidTournamentError("--c3 needs --out to write the block-size sidecar")
        write_composition(comp, args.out)
        return "", EXIT_OK
    return serialize(one(0)), EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    common.add_argument("--cap", type=int, default=None, help="override the vertex-count cap")
    common.add_argument("--seed", type=_u64, default=0)

    p = argparse.ArgumentParser(prog="tourncount", description="Hamilton cycle counts in tournaments")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="exact counts for a .trn file")
    c.add_argument("file", type=Path)
    c.add_argument("what", choices=("cycles", "paths", "covers"))
    c.set_defaults(func=cmd_count)

    t = sub.add_parser("triangular", parents=[common], help="C3 count versus the Stirling bound")
    t.add_argument("m1", type=int)
    t.add_argument("m2", type=int)
    t.add_argument("m3", type=int)
    t.add_argument("--mode", choices=("transitive", "random"), default="transitive")
    t.set_defaults(func=cmd_triangular)

    v = sub.add_parser("convergence", parents=[common], help="exact vs asymptotic table")
    v.add_argument("target", choices=ex.CONVERGENCE_TARGETS)
    v.add_argument("sizes", type=_sizes, help="comma-separated part sizes m (n = 3m)")
    v.add_argument("--dps", type=int, default=ex.DEFAULT_DPS, help="working decimal digits")
    v.set_defaults(func=cmd_convergence, default_format="csv")

    mc = sub.add_parser("montecarlo", parents=[common], help="sample mean vs exact expectation")
    mc.add_argument("kind", choices=ex.MC_KINDS)
    mc.add_argument("--n", type=int, required=True)
    mc.add_argument("--samples", type=int, default=10_000)
    mc.add_argument("--jobs", type=int, default=1)
    mc.set_defaults(func=cmd_montecarlo)

    s = sub.add_parser("selftest", parents=[common], help="exhaustive small-case oracle suite")
    s.add_argument("--corrupt", action="store_true", help="inject a corrupted arc matrix")
    s.set_defaults(func=cmd_selftest)

    g = sub.add_parser("generate", parents=[common], help="write a .trn tournament")
    g.add_argument("kind", choices=("transitive", "random"))
    g.add_argument("m", type=int)
    g.add_argument("--c3", action="store_true", help="compose three such parts")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    try:
        text, code = args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidTournamentError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if text and args.out is not None:
        args.out.write_text(text)
    elif text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
