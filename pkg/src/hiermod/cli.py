"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 quadrature non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io_formats as fio
from .capacity import QuadratureConfig, NoiseModel, capacity_curve, db_grid, mc_capacity
from .constellation import StreamSpec, builtin
from .errors import ConvergenceError, DomainError, ParseError
from .inversion import required_esn0
from .prediction import HP, LP, predict_jobs, sweep_alpha, sweep_rate

EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


def _constellation(args):
    choice = args.constellation
    if choice.lower() in ("qpsk", "qam16", "qam16-hier"):
        if args.alpha is not None and choice.lower() != "qam16-hier":
            raise UsageError("--alpha only applies to qam16-hier")
        return builtin(choice, args.alpha)
    if not Path(choice).is_file():
        raise UsageError(f"--constellation: {choice!r} is neither a builtin (qpsk, qam16, qam16-hier) nor a file")
    return fio.load_constellation(choice)


def _stream(args, c):
    """Stream from --bits, falling back to --stream; None means joint."""
    if getattr(args, "bits", None):
        s = StreamSpec.parse(args.bits)
        s.check(c)
        return None if s.covers(c) else s
    kind = getattr(args, "stream", None)
    if kind in (None, "single"):
        return None
    if c.m != 4:
        raise UsageError("--stream hp/lp needs a 16-point constellation; use --bits")
    return HP if kind == "hp" else LP


def _quadrature(args):
    return QuadratureConfig(nodes_per_axis=args.nodes, tolerance=args.tolerance)


def _write(args, text):
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _values(text, name):
    items = [tok.strip() for tok in (text or "").split(",") if tok.strip()]
    if not items:
        raise UsageError(f"{name} needs at least one value")
    return items


def cmd_capacity(args):
    c = _constellation(args)
    s = _stream(args, c)
    grid = db_grid(args.snr_from, args.snr_to, args.snr_step)
    curve = capacity_curve(c, s, grid, _quadrature(args))
    mc = None
    if args.mc_check:
        mc = [mc_capacity(c, s, NoiseModel(db), args.mc_check, args.seed) for db in grid]
    _write(args, fio.emit_curve_csv(curve, mc))


def cmd_invert(args):
    c = _constellation(args)
    s = _stream(args, c)
    res = required_esn0(c, s, args.target, _quadrature(args))
    _write(
        args,
        f"es_n0_db,achieved_normalized_capacity,iterations,bracket_width_db\n"
        f"{fio.fmt(res.es_n0_db)},{fio.fmt(res.achieved_capacity)},{res.iterations},{fio.fmt(res.bracket_width_db)}\n",
    )


def cmd_predict(args):
    table = fio.load_reference_table(args.ref_table)
    c = _constellation(args)
    rates = _values(args.rate, "--rate") if args.rate else table.rates
    if args.stream == "both" and not args.bits:
        if c.m != 4:
            raise UsageError("--stream both needs a 16-point constellation")
        jobs = [(s, r) for s in (HP, LP) for r in rates]
    else:
        s = _stream(args, c)
        jobs = [(s, r) for r in rates]
    results = predict_jobs(
        table, jobs, c, _quadrature(args), interpolate=args.interpolate, total_bits=args.total_bits
    )
    _write(args, fio.emit_predictions_csv(results))


def cmd_sweep(args):
    table = fio.load_reference_table(args.ref_table)
    values = _values(args.values, "--values")
    q = _quadrature(args)
    if args.over == "alpha":
        if not args.rate:
            raise UsageError("sweep --over alpha needs --rate")
        if args.stream not in ("hp", "lp"):
            raise UsageError("sweep --over alpha needs --stream hp or lp")
        try:
            alphas = [float(v) for v in values]
        except ValueError as exc:
            raise UsageError(f"--values: {exc}") from None
        rows = sweep_alpha(table, args.rate, alphas, args.stream, q, args.interpolate)
        _write(args, fio.emit_sweep_csv("alpha", rows))
    else:
        c = _constellation(args)
        rows = sweep_rate(table, values, c, _stream(args, c), q, args.interpolate)
        _write(args, fio.emit_sweep_csv("rate", rows))


def _common(p, stream_choices=("hp", "lp", "single")):
    p.add_argument("--constellation", default="qam16-hier", help="qpsk, qam16, qam16-hier or a constellation file")
    p.add_argument("--alpha", type=float, default=None, help="constellation parameter for qam16-hier (default 2)")
    p.add_argument("--bits", help="comma-separated 1-based label bit positions of the stream")
    p.add_argument("--stream", choices=stream_choices, default=None, help="shortcut for --bits on 16-point constellations")
    p.add_argument("--nodes", type=int, default=32, help="Gauss-Hermite nodes per axis (default 32)")
    p.add_argument("--tolerance", type=float, default=1e-4, help="quadrature tolerance in bits (default 1e-4)")
    p.add_argument("--out", help="output file (default stdout)")


def build_parser():
    parser = argparse.ArgumentParser(prog="hiermod", description="Hierarchical modulation capacity and link performance.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="capacity curve versus Es/N0 as CSV")
    _common(p)
    p.add_argument("--snr-from", type=float, default=-10.0)
    p.add_argument("--snr-to", type=float, default=25.0)
    p.add_argument("--snr-step", type=float, default=0.25)
    p.add_argument("--mc-check", type=int, metavar="N", help="append a Monte-Carlo estimate with N samples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("invert", help="Es/N0 where the normalized capacity reaches a target")
    _common(p)
    p.add_argument("--target", type=float, required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("predict", help="required Es/N0 and spectral efficiency from a reference table")
    _common(p, ("hp", "lp", "single", "both"))
    p.add_argument("--ref-table", required=True)
    p.add_argument("--rate", help="comma-separated coding rates (default: every table row)")
    p.add_argument("--interpolate", action="store_true", help="interpolate operating points between table rates")
    p.add_argument("--total-bits", action="store_true", help="efficiency as rate * m instead of rate * k")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sweep", help="required Es/N0 over alpha or coding rate")
    _common(p)
    p.add_argument("--ref-table", required=True)
    p.add_argument("--over", choices=("alpha", "rate"), required=True)
    p.add_argument("--values", required=True, help="comma-separated alphas or rates")
    p.add_argument("--rate", help="coding rate for --over alpha")
    p.add_argument("--interpolate", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.alpha is not None and args.alpha < 1:
            raise UsageError("alpha must be ≥ 1")
        args.func(args)
    except (UsageError, DomainError, ParseError, OSError) as exc:
        print(f"hiermod {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"hiermod {args.command}: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())
