#!/usr/bin/env python3
"""B-spline solver benchmark: the hydrogen spectrum to nine digits.

Assembles the radial Hamiltonian for a pure Coulomb potential in the
default two-region knot sequence and compares the lowest eigenvalues with
-Z^2/(2 n^2).
"""

from altmultipole import (
    BasisSpec,
    GeometricThenLinear,
    InversePower,
    Kinetic,
    Overlap,
    assemble,
    build_knots,
    combine,
    solve,
)


def main() -> None:
    basis = BasisSpec(order=8, n_splines=300, r_box=140.0,
                      scheme=GeometricThenLinear())
    seq = build_knots(basis)
    print(f"basis: order {basis.order}, {basis.n_splines} splines, "
          f"box {basis.r_box:g} bohr, {len(seq.breakpoints) - 1} intervals")
    overlap = assemble(Overlap(), seq)

    for z in (1, 2):
        print(f"\nZ = {z}")
        print(f"  {'state':>6} {'computed':>16} {'exact':>14} {'error':>10}")
        for l in (0, 1, 2):
            h = combine([
                (1.0, assemble(Kinetic(l), seq)),
                (-float(z), assemble(InversePower(1), seq)),
            ])
            pairs = solve(h, overlap, 5 - l)
            for idx, (e, _) in enumerate(pairs):
                n = idx + l + 1
                exact = -z * z / (2.0 * n * n)
                label = f"{n}{'spd'[l]}"
                print(f"  {label:>6} {e:>16.10f} {exact:>14.10f} {e - exact:>10.1e}")


if __name__ == "__main__":
    main()
