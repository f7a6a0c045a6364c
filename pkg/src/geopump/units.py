"""Unit conventions.

Model units set the lattice hopping to 1; energies are measured in units of
ENERGY_UNIT_MEV and times in hbar / ENERGY_UNIT_MEV. The default drive
frequency makes one drive cycle last TAU_CYCLE_PS.
"""

from __future__ import annotations

import math

HBAR_MEV_PS = 0.6582119569

# 1 model energy unit in meV (configurable at the CLI level)
ENERGY_UNIT_MEV = 100.0

# one drive cycle, laboratory picoseconds
TAU_CYCLE_PS = 0.83

K_BOLTZMANN_MEV_PER_K = 0.08617


def model_time_unit_ps(energy_unit_mev: float = ENERGY_UNIT_MEV) -> float:
    """Duration of one model time unit in ps."""
    return HBAR_MEV_PS / energy_unit_mev


def omega_for_cycle(tau_ps: float = TAU_CYCLE_PS,
                    energy_unit_mev: float = ENERGY_UNIT_MEV) -> float:
    """Angular drive frequency (rad per model time unit) for a cycle of tau_ps."""
    return 2.0 * math.pi * model_time_unit_ps(energy_unit_mev) / tau_ps


DEFAULT_OMEGA = omega_for_cycle()
