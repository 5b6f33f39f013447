"""Solve a small catalogue of problems over a grid and report timings.

Writes one CSV per problem next to this script (or under --outdir) and
prints a per-problem wall-time summary, the same artifacts the CLI's
`solve` subcommand produces.
"""

import argparse
import os
import time

from fracfield import (BoundaryTransform, GridSpec, HilferOrder, ProblemSpec,
                       RieszFellerSymbol, SourceSpec)
from fracfield.solver import solve_grid, write_grid_csv

PROBLEMS = {
    "wave_dalembert": ProblemSpec(
        kind="wave", variant="quantum",
        sym=RieszFellerSymbol(2.0, 0.0), ord=HilferOrder(2.0, 1.0),
        f_hat=BoundaryTransform("gaussian", 1.0)),
    "laplace_gaussian": ProblemSpec(
        kind="laplace", variant="quantum",
        sym=RieszFellerSymbol(1.8, 0.0), ord=HilferOrder(1.5, 0.5),
        f_hat=BoundaryTransform("gaussian", 1.0)),
    "helmholtz_mixed": ProblemSpec(
        kind="helmholtz", variant="quantum",
        sym=RieszFellerSymbol(1.7, 0.0), ord=HilferOrder(1.4, 0.3), k=0.7,
        f_hat=BoundaryTransform("gaussian", 1.0),
        g_hat=BoundaryTransform("gaussian", 2.0)),
    "poisson_sourced": ProblemSpec(
        kind="poisson", variant="quantum",
        sym=RieszFellerSymbol(1.9, 0.0), ord=HilferOrder(1.6, 0.5),
        f_hat=BoundaryTransform("gaussian", 1.0),
        source=SourceSpec("delta_power", beta=0.3)),
    "laplace_point_data": ProblemSpec(
        kind="laplace", variant="quantum",
        sym=RieszFellerSymbol(2.0, 0.0), ord=HilferOrder(1.5, 0.5),
        f_hat=BoundaryTransform("delta")),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default=os.path.dirname(__file__) or ".")
    ap.add_argument("--nx", type=int, default=7)
    ap.add_argument("--ny", type=int, default=3)
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args()

    import numpy as np
    grid = GridSpec(tuple(np.linspace(-2.0, 2.0, args.nx)),
                    tuple(np.linspace(0.4, 1.6, args.ny)))

    for name, prob in PROBLEMS.items():
        t0 = time.time()
        rows = solve_grid(prob, grid, method="auto", tol=args.tol)
        dt = time.time() - t0
        path = os.path.join(args.outdir, "profile_%s.csv" % name)
        write_grid_csv(rows, path)
        bad = sum(1 for r in rows if r["error_flag"])
        resid = max((r["imag_residual"] for r in rows
                     if not r["error_flag"]), default=float("nan"))
        print("%-22s %3d pts  %6.2fs  failures=%d  max_imag=%.1e  -> %s"
              % (name, len(rows), dt, bad, resid, path))


if __name__ == "__main__":
    main()
