"""Spectral efficiency versus required Es/N0 for both streams at every table rate."""

from _common import load_table, parser, write

from hiermod.constellation import make_nonuniform_16qam, make_qpsk
from hiermod.io_formats import emit_predictions_csv
from hiermod.prediction import HP, LP, predict_streams


def main():
    p = parser(__doc__, "efficiency_points.csv")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--total-bits", action="store_true", help="efficiency as rate * 4 instead of rate * 2")
    args = p.parse_args()
    table = load_table(args.ref_table)
    rows = predict_streams(table, table.rates, make_nonuniform_16qam(args.alpha), (HP, LP), total_bits=args.total_bits)
    rows += predict_streams(table, table.rates, make_qpsk(), (None,))
    rows.sort(key=lambda r: r.required_es_n0_db)
    write(args.out, emit_predictions_csv(rows))


if __name__ == "__main__":
    main()
