"""Command line interface.

Exit codes: 0 success, 1 usage or domain error, 2 mathematical violation,
3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
import traceback
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from .bitcore import block_count
from .digitsum import kappa
from .drift import c_dist, v_seq
from .dyadic import pmf_to_json
from .spectral import block_family, charfun_rows, decay_check, gauss_report
from .sweep import decimal12, run_sweep
from .verify import SUITES

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_INTERNAL = 0, 1, 2, 3
JOBS_ENV = "DIGITDRIFT_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x]


def _emit(obj, out=None) -> None:
    json.dump(obj, out or sys.stdout, indent=2)
    (out or sys.stdout).write("\n")


def cmd_dist(args) -> int:
    c = c_dist(args.t)
    if args.format == "json":
        _emit({"t": args.t, **pmf_to_json(c)})
        return EXIT_OK
    kmin = c.k_cut if args.kmin is None else args.kmin
    kmax = c.top - 1 if args.kmax is None else args.kmax
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["k", "num", "exp", "decimal"])
    for k in range(kmin, kmax + 1):
        p = c(k)
        writer.writerow([k, p.num, p.exp, decimal12(p)])
    return EXIT_OK


def cmd_cusick_sweep(args) -> int:
    if args.tmax < 1:
        raise UsageError("--tmax must be at least 1")
    jobs = args.jobs or int(os.environ.get(JOBS_ENV, "1"))
    out_path = Path(args.out)
    ckpt = Path(args.checkpoint) if args.checkpoint else out_path.with_name(out_path.name + ".ckpt")
    mode = "r+" if args.resume and out_path.exists() else "w+"
    with open(out_path, mode, newline="") as fh:
        summary = run_sweep(args.tmax, fh, jobs=jobs, checkpoint=ckpt, resume=args.resume)
    _emit(summary.to_json())
    if summary.violations:
        print(
            f"VIOLATION: sum_(k>=0) c_t(k) <= 1/2 at t = {summary.violations[0]}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    kwargs = {}
    if args.tmax is not None:
        if args.suite == "spectral":
            raise UsageError("the spectral suite takes --seed, not --tmax")
        kwargs["tmax"] = args.tmax
    if args.suite == "spectral":
        kwargs["seed"] = args.seed
    result = suite(**kwargs)
    _emit(result.to_json())
    return EXIT_OK if result.passed else EXIT_VIOLATION


def cmd_gauss(args) -> int:
    if args.t is not None:
        ts = [args.t]
    else:
        ts = [block_family(n, args.block) for n in args.n_list]
    try:
        reports = [gauss_report(t).to_json() for t in ts]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(reports[0] if args.t is not None else reports)
    return EXIT_OK


def cmd_charfun(args) -> int:
    grid = np.linspace(-math.pi, math.pi, args.grid)
    if args.format == "json":
        _emit(decay_check(args.t, grid).to_json())
        return EXIT_OK
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["t", "N", "theta", "gamma_re", "gamma_im", "bound", "margin"])
    for row in charfun_rows(args.t, grid):
        writer.writerow([row[0], row[1]] + [repr(x) for x in row[2:]])
    return EXIT_OK


def cmd_variance(args) -> int:
    v = v_seq(args.t)
    _emit(
        {
            "t": args.t,
            "v": str(v),
            "v_decimal": decimal12(v),
            "kappa": str(kappa(args.t)) if args.t >= 1 else None,
        }
    )
    return EXIT_OK


def cmd_blocks(args) -> int:
    _emit({"t": args.t, "N": block_count(args.t)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="digitdrift", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dist", help="exact law of r(n+t) - r(n)")
    d.add_argument("--t", type=_nonneg, required=True)
    d.add_argument("--format", choices=("json", "csv"), default="json")
    d.add_argument("--kmin", type=int)
    d.add_argument("--kmax", type=int)
    d.set_defaults(func=cmd_dist)

    sw = sub.add_parser("cusick-sweep", help="check sum_(k>=0) c_t(k) > 1/2 for 1 <= t < tmax")
    sw.add_argument("--tmax", type=int, required=True)
    sw.add_argument("--jobs", type=int, default=0, help=f"worker processes (default ${JOBS_ENV} or 1)")
    sw.add_argument("--out", required=True, help="CSV output path")
    sw.add_argument("--checkpoint", help="checkpoint path (default OUT.ckpt)")
    sw.add_argument("--resume", action="store_true")
    sw.set_defaults(func=cmd_cusick_sweep)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--tmax", type=int)
    v.add_argument("--seed", type=int, default=7)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gauss", help="compare c_t with the Gaussian of variance v_t")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--t", type=_nonneg)
    src.add_argument("--family", choices=("blocks",))
    g.add_argument("--n-list", type=_int_list, default=[4, 8, 16, 32, 64])
    g.add_argument("--block", default="10", help="binary word repeated N times")
    g.set_defaults(func=cmd_gauss)

    cf = sub.add_parser("charfun", help="|gamma_t| against its decay bound")
    cf.add_argument("--t", type=_nonneg, required=True)
    cf.add_argument("--grid", type=int, default=64)
    cf.add_argument("--format", choices=("csv", "json"), default="csv")
    cf.set_defaults(func=cmd_charfun)

    va = sub.add_parser("variance", help="v_t and kappa(t)")
    va.add_argument("--t", type=_nonneg, required=True)
    va.set_defaults(func=cmd_variance)

    b = sub.add_parser("blocks", help="number of maximal blocks of ones")
    b.add_argument("--t", type=_nonneg, required=True)
    b.set_defaults(func=cmd_blocks)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"digitdrift: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
