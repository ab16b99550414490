"""Command-line interface: ``entdecay {measure,sweep,verify}``.

CSV output uses a single header row, LF line endings and Python's shortest
round-trip float repr; undefined values are written as ``nan``.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from typing import Iterable, Optional, Sequence

from . import __version__
from .checks import DEFAULT_SEED, run_checks
from .decay import LossGrid, Measure, decay_curve, sweep
from .errors import EntDecayError
from .measures import measure_all
from .states import NoiseAxis, mix_state, p_closed_form

MEASURE_COLUMNS = ["p", "nx", "ny", "nz", "n", "P_n", "concurrence", "eof", "ed"]
LOSS_COLUMNS = ["p", "nx", "ny", "nz", "k", "r", "measure", "F", "R"]

SWEEP_EPILOG = """\
tables:
  decay  one row per (p, n), p outer:
         p,nx,ny,nz,n,P_n,concurrence,eof,ed
         ed is nan unless the axis is x, y or z.
  loss   one row per (p, k, r, measure), p outer, r inner:
         p,nx,ny,nz,k,r,measure,F,R
         F = (E_k - E_{k+r}) / E_k, R = F(p,k,r) / F(p,0,r); nan where undefined.

values:
  --p/--n/--k/--r take a number or a comma-separated list;
  --grid DIM=start:stop:step (stop inclusive) overrides the list for DIM.
"""


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    return "nan" if math.isnan(x) else repr(x)


def _csv(out, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def _float_list(text: str) -> list[float]:
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected number(s), got {text!r}")
    if not values or not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"expected finite number(s), got {text!r}")
    return values


def _axis(text: str) -> NoiseAxis:
    parts = text.split(",")
    try:
        if len(parts) != 3:
            raise ValueError
        return NoiseAxis(*(float(t) for t in parts))
    except (ValueError, EntDecayError):
        raise argparse.ArgumentTypeError(f"axis must be three numbers x,y,z not all zero, got {text!r}")


def _grid(text: str) -> tuple[str, list[float]]:
    try:
        dim, spec = text.split("=", 1)
        start, stop, step = (float(t) for t in spec.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like DIM=start:stop:step, got {text!r}")
    dim = dim.strip()
    if dim not in ("p", "n", "k", "r"):
        raise argparse.ArgumentTypeError(f"grid dimension must be one of p, n, k, r, got {dim!r}")
    if not (step > 0 and stop >= start and all(map(math.isfinite, (start, stop, step)))):
        raise argparse.ArgumentTypeError(f"grid needs step > 0 and stop >= start, got {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    # Rounding keeps 0.1*3 from printing as 0.30000000000000004.
    return dim, [round(start + i * step, 12) for i in range(count)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entdecay",
        description="Entanglement decay of a two-qubit maximally entangled state under Pauli noise.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--axis", type=_axis, default=NoiseAxis.x(), help="noise axis x,y,z (default 1,0,0)")
    common.add_argument("--out", default="-", help="output path (default: stdout)")

    m = sub.add_parser(
        "measure",
        parents=[common],
        help="entanglement of rho_(n) for one (p, n)",
        description="Print one CSV row: " + ",".join(MEASURE_COLUMNS) + " (ed blank when not Bell-diagonal).",
    )
    m.add_argument("--p", type=float, required=True, help="identity-branch probability in [0, 1]")
    m.add_argument("--n", type=float, default=1.0, help="number of channel applications (default 1)")

    s = sub.add_parser(
        "sweep",
        parents=[common],
        help="CSV tables behind the decay and loss-ratio figures",
        epilog=SWEEP_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    s.add_argument("--table", choices=["decay", "loss"], default="decay")
    s.add_argument("--p", type=_float_list, default=None)
    s.add_argument("--n", type=_float_list, default=[1.0])
    s.add_argument("--k", type=_float_list, default=[1.0, 2.0, 3.0, 4.0, 5.0])
    s.add_argument("--r", type=_float_list, default=[1.0, 2.0, 3.0])
    s.add_argument("--measure", choices=["eof", "ed", "both"], default="both")
    s.add_argument("--grid", type=_grid, action="append", default=[], metavar="DIM=START:STOP:STEP")

    v = sub.add_parser("verify", help="run the invariant self-checks")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for random axes (default {DEFAULT_SEED})")
    v.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    v.add_argument("--out", default="-", help="output path (default: stdout)")
    return parser


def _check_args(parser: argparse.ArgumentParser, args) -> None:
    if args.command == "measure":
        if not 0.0 <= args.p <= 1.0:
            parser.error(f"--p must be in [0, 1], got {args.p}")
        if not (args.n >= 0 and math.isfinite(args.n)):
            parser.error(f"--n must be finite and >= 0, got {args.n}")
    elif args.command == "sweep":
        for dim, values in args.grid:
            setattr(args, dim, values)
        if args.p is None:
            args.p = [round(i * 0.05, 12) for i in range(21)]
        if any(not 0.0 <= p <= 1.0 for p in args.p):
            parser.error("all p values must be in [0, 1]")
        for dim in ("n", "k", "r"):
            if any(x < 0 for x in getattr(args, dim)):
                parser.error(f"all {dim} values must be >= 0")
    elif args.command == "verify":
        if args.seed < 0:
            parser.error("--seed must be non-negative")
        if args.tol is not None and not args.tol >= 0:
            parser.error("--tol must be non-negative")


def cmd_measure(args, out) -> int:
    P = p_closed_form(args.p, args.n)
    values = measure_all(mix_state(P, args.axis))
    row = [args.p, *args.axis.as_tuple(), args.n, P, values.concurrence, values.eof, values.ed]
    _csv(out, MEASURE_COLUMNS, [row])
    return 0


def cmd_sweep(args, out) -> int:
    axis = args.axis
    if args.table == "decay":
        rows = []
        for p in args.p:
            for rep in decay_curve(p, axis, args.n):
                ed = math.nan if rep.ed is None else rep.ed
                rows.append([p, *axis.as_tuple(), rep.n, rep.P_n, rep.concurrence, rep.eof, ed])
        _csv(out, MEASURE_COLUMNS, rows)
        return 0

    measures = [Measure.EOF, Measure.ED] if args.measure == "both" else [Measure(args.measure)]
    results = {m: sweep(LossGrid(args.p, args.k, args.r, m, axis)) for m in measures}
    rows = []
    # Interleave measures per grid point so p stays the outer loop.
    for i in range(len(results[measures[0]])):
        for m in measures:
            pt = results[m][i]
            rows.append([pt.p, *axis.as_tuple(), pt.k, pt.r, pt.measure.value, pt.F, pt.R])
    _csv(out, LOSS_COLUMNS, rows)
    return 0


def cmd_verify(args, out) -> int:
    results = run_checks(seed=args.seed, tol=args.tol)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.write(f"{status} {r.name} max_error={_fmt(r.max_error)} tol={_fmt(r.tol)}\n")
    failed = sum(not r.passed for r in results)
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 0 if failed == 0 else 1


COMMANDS = {"measure": cmd_measure, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_args(parser, args)

    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except EntDecayError as exc:
        print(f"entdecay: error: {exc}", file=sys.stderr)
        return 1

    if args.out == "-":
        sys.stdout.write(buf.getvalue())
        sys.stdout.flush()
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
