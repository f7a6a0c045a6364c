#!/usr/bin/env python3
"""Recompute the numerical anchors that the regression tests pin.

The tests freeze these numbers as expected values; run this script to see
where each one comes from and to regenerate them after an intentional
physics change. Everything here uses the exact-mode propagator, which is
unitary to rounding, so the anchors are limited only by step convergence.
"""

import numpy as np

from geopump import DriveParams, TrotterConfig, evolve, unitarity_report
from geopump.propagator import p_g_numeric_grid

TPT_POINT = dict(eps0=-0.95, a_ph=0.1, k=0.02)


def main():
    p = DriveParams(**TPT_POINT)

    for steps in (2000, 20000):
        cfg = TrotterConfig(steps_per_cycle=steps, n_cycles=100)
        tr = evolve(p, cfg)
        print(f"p_n[100] at TPT point, {steps} steps/cycle: {tr.p_n[-1]:.15f}")

    cfg = TrotterConfig(steps_per_cycle=2000, n_cycles=100)
    for eps0 in (-0.95, -0.80):
        ks = np.linspace(0.005, np.pi / 4, 101)
        pg = p_g_numeric_grid(ks, eps0, 0.1, p.omega, cfg)
        i = int(np.argmax(pg))
        print(f"max_k p_g at eps0={eps0}: {pg[i]:.15f} at k={ks[i]:.6f}")

    cfg200 = TrotterConfig(steps_per_cycle=2000, n_cycles=200)
    ground = evolve(p, cfg200).p_n[-1]
    print(f"ground-start p_n[200]: {ground:.15f}")

    for order in (1, 2, 4):
        cfg = TrotterConfig(steps_per_cycle=2000, taylor_order=order,
                            mode="taylor", n_cycles=100)
        defect, dev = unitarity_report(p, cfg)
        print(f"taylor order {order}, 2000 steps: defect={defect:.6e} dev={dev:.6e}")


if __name__ == "__main__":
    main()
