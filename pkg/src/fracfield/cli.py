"""Command-line surface: `fracfield eval|solve|verify`.

All configuration comes in through flags and JSON files; nothing reads the
environment.  Exit codes: 0 success, 1 verification failure, 2 unparseable
input or invalid problem spec, 3 evaluation failure (non-convergence or a
domain violation discovered mid-computation).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import verify as verify_mod
from .errors import DomainError, FracfieldError
from .foxh import HFunctionSpec, h_series
from .problems import GridSpec, ProblemSpec
from .solver import solve_grid, write_grid_csv
from .specfun import MLParams, ml_four, ml_three, ml_two, wright


def _print_value(val) -> None:
    v = complex(val)
    bound = float(getattr(val, "trunc_bound", 0.0))
    print(json.dumps({"re": v.real, "im": v.imag, "trunc_bound": bound}))


def _load_json_arg(text: str):
    """Accept either a path to a JSON file or an inline JSON literal."""
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    return json.loads(text)


# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    z = complex(args.z, args.z_im)
    try:
        if args.fn == "ml":
            if args.kappa_ml != 1.0:
                val = ml_four(MLParams(args.alpha, args.beta, args.gamma,
                                       args.kappa_ml), z)
            elif args.gamma != 1.0:
                val = ml_three(args.alpha, args.beta, args.gamma, z)
            else:
                val = ml_two(args.alpha, args.beta, z)
        elif args.fn == "wright":
            val = wright(args.a, args.b, z)
        else:
            spec = HFunctionSpec.from_json(_load_json_arg(args.spec))
            val = h_series(spec, z)
    except (json.JSONDecodeError, KeyError) as exc:
        print("error: bad H-spec JSON: %s" % exc, file=sys.stderr)
        return 2
    except FracfieldError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    _print_value(val)
    return 0


def cmd_solve(args) -> int:
    try:
        prob = ProblemSpec.from_json(_load_json_arg(args.problem))
        grid = GridSpec.from_json(_load_json_arg(args.grid))
    except (json.JSONDecodeError, OSError) as exc:
        print("error: bad JSON input: %s" % exc, file=sys.stderr)
        return 2
    except (DomainError, KeyError, TypeError, ValueError) as exc:
        print("error: invalid spec: %s" % exc, file=sys.stderr)
        return 2
    tol = args.tol if args.tol is not None else 1e-8

    rows = solve_grid(prob, grid, method=args.method, tol=tol)
    write_grid_csv(rows, args.out)
    failures = sum(1 for r in rows if r["error_flag"])
    finite = [r["imag_residual"] for r in rows if not r["error_flag"]]
    max_resid = max(finite) if finite else math.nan
    print("points=%d failures=%d max_imag_residual=%.3e"
          % (len(rows), failures, max_resid), file=sys.stderr)
    if failures == len(rows):
        return 3
    return 0


def cmd_verify(args) -> int:
    names = list(verify_mod.SUITES) if args.suite == "all" else [args.suite]
    report = verify_mod.run_suites(names, tol=args.tol, seed=args.seed)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fracfield",
        description="Evaluate fractional-field closed forms and their "
                    "special-function building blocks.")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a special function")
    evsub = ev.add_subparsers(dest="fn", required=True)

    ml = evsub.add_parser("ml", help="Mittag-Leffler family")
    ml.add_argument("--alpha", type=float, required=True)
    ml.add_argument("--beta", type=float, required=True)
    ml.add_argument("--gamma", type=float, default=1.0)
    ml.add_argument("--kappa-ml", dest="kappa_ml", type=float, default=1.0)
    ml.add_argument("--z", type=float, required=True)
    ml.add_argument("--z-im", dest="z_im", type=float, default=0.0)
    ml.set_defaults(handler=cmd_eval)

    wr = evsub.add_parser("wright", help="Wright function")
    wr.add_argument("--a", type=float, required=True)
    wr.add_argument("--b", type=float, required=True)
    wr.add_argument("--z", type=float, required=True)
    wr.add_argument("--z-im", dest="z_im", type=float, default=0.0)
    wr.set_defaults(handler=cmd_eval)

    fx = evsub.add_parser("foxh", help="Fox H-function from a JSON spec")
    fx.add_argument("--spec", required=True,
                    help="path to (or inline) H-spec JSON")
    fx.add_argument("--z", type=float, required=True)
    fx.add_argument("--z-im", dest="z_im", type=float, default=0.0)
    fx.set_defaults(handler=cmd_eval)

    so = sub.add_parser("solve", help="solve a problem over a grid to CSV")
    so.add_argument("--problem", required=True,
                    help="path to (or inline) problem JSON")
    so.add_argument("--grid", required=True,
                    help="path to (or inline) grid JSON")
    so.add_argument("--out", required=True, help="output CSV path")
    so.add_argument("--method", default="auto",
                    choices=("auto", "pointwise", "closed_form", "series"))
    so.add_argument("--tol", type=float, default=None)
    so.set_defaults(handler=cmd_solve)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("--suite", required=True,
                    choices=verify_mod.SUITES + ("all",))
    ve.add_argument("--tol", type=float, default=None)
    ve.add_argument("--seed", type=int, default=20260814)
    ve.set_defaults(handler=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
