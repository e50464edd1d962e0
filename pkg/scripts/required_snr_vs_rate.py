"""Required Es/N0 of the HP and LP streams versus coding rate at fixed alpha.

Only rates present in the reference table are used unless --interpolate is
given, in which case --rates may fall between table rows.
"""

from _common import load_table, parser, write

from hiermod.constellation import make_nonuniform_16qam
from hiermod.io_formats import fmt_rate
from hiermod.prediction import HP, LP, as_rate, sweep_rate


def main():
    p = parser(__doc__, "required_snr_vs_rate.csv")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--rates", default=None, help="comma-separated rates (default: table rates)")
    p.add_argument("--interpolate", action="store_true")
    args = p.parse_args()
    table = load_table(args.ref_table)
    rates = [as_rate(r) for r in args.rates.split(",")] if args.rates else table.rates
    c = make_nonuniform_16qam(args.alpha)
    hp = sweep_rate(table, rates, c, HP, interpolate=args.interpolate)
    lp = sweep_rate(table, rates, c, LP, interpolate=args.interpolate)
    lines = ["rate,hp_required_es_n0_db,lp_required_es_n0_db"]
    lines += [f"{fmt_rate(r)},{h:.9g},{l:.9g}" for (r, h), (_, l) in zip(hp, lp)]
    write(args.out, "\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
