"""cfplot: render figures from simulator sweep CSVs.

    cfplot fringes --in result_phase-sweep.csv --out fringes.png
    cfplot ghost --in pert-10.csv pert0.csv pert+10.csv --out ghost.png
"""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .plots import PlotJob, plot_fringes, plot_ghost


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="cfplot", description=__doc__)
    sub = parser.add_subparsers(dest="kind", required=True)
    p_fringes = sub.add_parser("fringes", help="phase-sweep fringe figure")
    p_fringes.add_argument("--in", dest="inputs", nargs=1, required=True)
    p_fringes.add_argument("--out", required=True)
    p_ghost = sub.add_parser("ghost", help="banded scan figure")
    p_ghost.add_argument(
        "--in",
        dest="inputs",
        nargs=3,
        required=True,
        metavar=("MINUS", "BASE", "PLUS"),
    )
    p_ghost.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    job = PlotJob(tuple(args.inputs), args.out, args.kind)
    try:
        if args.kind == "fringes":
            plot_fringes(job)
        else:
            plot_ghost(job)
    except (SchemaError, OSError, ValueError) as err:
        print(f"cfplot: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
