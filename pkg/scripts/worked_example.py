"""Four-step prediction for HP rate 2/9 and LP rate 1/5 on hierarchical 16-QAM."""

from fractions import Fraction

from _common import load_table, parser

from hiermod.capacity import DEFAULT_QUADRATURE
from hiermod.constellation import make_nonuniform_16qam
from hiermod.prediction import HP, LP, equivalent_ideal_rate, predict_stream


def main():
    p = parser(__doc__, "unused")
    p.add_argument("--alpha", type=float, default=2.0)
    args = p.parse_args()
    table = load_table(args.ref_table)
    c = make_nonuniform_16qam(args.alpha)
    for name, s, rate in (("HP", HP, Fraction(2, 9)), ("LP", LP, Fraction(1, 5))):
        op = table.operating_point(rate)
        r_tilde = equivalent_ideal_rate(table, rate, DEFAULT_QUADRATURE)
        res = predict_stream(table, rate, c, s)
        print(f"{name} rate {rate}:")
        print(f"  1. reference operating point  {op:+.2f} dB")
        print(f"  2. ideal-equivalent rate      {r_tilde:.4f}")
        print(f"  3. required Es/N0 on {c.name}  {res.required_es_n0_db:+.3f} dB")
        print(f"  4. spectral efficiency        {res.spectral_efficiency:.4f} bit/s/Hz")


if __name__ == "__main__":
    main()
