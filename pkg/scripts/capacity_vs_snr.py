"""HP, LP and joint capacity of hierarchical 16-QAM versus Es/N0, plus the
uniform 16-QAM and QPSK references, for each requested alpha."""

from _common import parser, write

from hiermod.capacity import capacity_curve, db_grid
from hiermod.constellation import make_nonuniform_16qam, make_qam16, make_qpsk
from hiermod.prediction import HP, LP


def main():
    p = parser(__doc__, "capacity_vs_snr.csv")
    p.add_argument("--alphas", default="2,4")
    p.add_argument("--step", type=float, default=0.25)
    args = p.parse_args()
    grid = db_grid(-10, 25, args.step)
    cols = {
        "qpsk": capacity_curve(make_qpsk(), None, grid).capacity,
        "qam16": capacity_curve(make_qam16(), None, grid).capacity,
    }
    for alpha in (float(a) for a in args.alphas.split(",")):
        c = make_nonuniform_16qam(alpha)
        hp = capacity_curve(c, HP, grid).capacity
        lp = capacity_curve(c, LP, grid).capacity
        cols[f"hp_a{alpha:g}"] = hp
        cols[f"lp_a{alpha:g}"] = lp
        cols[f"hp+lp_a{alpha:g}"] = hp + lp
    lines = ["es_n0_db," + ",".join(cols)]
    for n, db in enumerate(grid):
        lines.append(f"{db:.9g}," + ",".join(f"{v[n]:.9g}" for v in cols.values()))
    write(args.out, "\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
