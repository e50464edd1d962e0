"""Required Es/N0 of the HP and LP streams as alpha varies."""

import numpy as np
from _common import load_table, parser, write

from hiermod.prediction import sweep_alpha


def main():
    p = parser(__doc__, "required_snr_vs_alpha.csv")
    p.add_argument("--hp-rate", default="2/9")
    p.add_argument("--lp-rate", default="1/5")
    p.add_argument("--alphas", default=",".join(f"{a:g}" for a in np.arange(1, 5.01, 0.25)))
    args = p.parse_args()
    table = load_table(args.ref_table)
    alphas = [float(a) for a in args.alphas.split(",")]
    hp = sweep_alpha(table, args.hp_rate, alphas, "HP")
    lp = sweep_alpha(table, args.lp_rate, alphas, "LP")
    lines = ["alpha,hp_required_es_n0_db,lp_required_es_n0_db"]
    lines += [f"{a:.9g},{h:.9g},{l:.9g}" for (a, h), (_, l) in zip(hp, lp)]
    write(args.out, "\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
