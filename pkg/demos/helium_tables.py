#!/usr/bin/env python3
"""Reproduce the published energy tables of the screened-charge model.

Prints both tables with computed values, published values, and the
deviations, then compares the two treatments of the momentum cross term
(full diagonalization against first-order perturbation) whose published
magnitude is not reachable from hydrogenic states alone.
"""

from altmultipole import (
    CorrectionLevel,
    ModelParams,
    StateLabel,
    reproduce_table,
    total_energy,
)


def main() -> None:
    for which in (1, 2):
        print(reproduce_table(which).pretty())

    params = ModelParams(z=2)
    ground = StateLabel(1, 0)
    print("momentum cross term, two treatments (helium ground state):")
    h2_diag = total_energy(params, ground, CorrectionLevel.H2).total
    h3_diag = total_energy(params, ground, CorrectionLevel.H3).total
    h2_pert = total_energy(params, ground, CorrectionLevel.H2, mode="pert").total
    h3_pert = total_energy(params, ground, CorrectionLevel.H3, mode="pert").total
    print(f"  diagonalized   : h2 {h2_diag:.5f} -> h3 {h3_diag:.5f}  (step {h3_diag - h2_diag:+.5f})")
    print(f"  first order    : h2 {h2_pert:.5f} -> h3 {h3_pert:.5f}  (step {h3_pert - h2_pert:+.5f})")
    print("  published step : -2.8968 -> -2.9040  (step -0.00720)")
    print("neither treatment reaches the published step on this grid; the")
    print("deviation is reported, not hidden, and scales with the knot spacing")
    print("near the origin.")


if __name__ == "__main__":
    main()
