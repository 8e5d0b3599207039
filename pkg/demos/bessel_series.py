#!/usr/bin/env python3
"""The sine-power radial series: exact coefficients and its distance from
the exact multipole coefficient of the Coulomb kernel.

The first table lists the rational coefficients of sin^(2s+l)(2a) for the
lowest four orders.  The second compares the partial sums (in the radius
ratio t) against the projection oracle sqrt(1+t^2) t^l/(2l+1), which is
the unique coefficient that makes the multipole resolution exact.
"""

from altmultipole import bessel_coefficients, bessel_eval, bessel_projection_oracle


def main() -> None:
    for l in range(4):
        table = bessel_coefficients(l, 4)
        pieces = [
            f"{str(c)} sin^{table.power(s)}"
            for s, c in enumerate(table.exact)
        ]
        print(f"j_{l}(a) = " + " + ".join(pieces) + " + ...")
    print()

    print("partial sums (s_max = 40) against the projection oracle:")
    print(f"  {'t':>4} " + " ".join(f"{'l=' + str(l):>12}" for l in range(4)))
    for t in (0.1, 0.3, 0.5, 0.7, 0.9):
        diffs = []
        for l in range(4):
            series = bessel_eval(l, t, "t", 40)
            oracle = bessel_projection_oracle(l, t, 256)
            diffs.append(series - oracle)
        print(f"  {t:>4} " + " ".join(f"{d:>+12.3e}" for d in diffs))
    print()
    print("the gap grows with t: the series overshoots the exact coefficient")
    print("everywhere except t -> 0, which the error scan quantifies in full.")


if __name__ == "__main__":
    main()
