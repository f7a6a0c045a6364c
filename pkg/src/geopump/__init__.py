"""Geometric pumping in a phonon-driven two-band model.

Two independent accounts of the pumped fraction: direct Trotter evolution of
the driven Hamiltonian (propagator) and the closed-form per-cycle map with
its ergodic orbit average (cyclemap), plus the staggered-start ensemble
picture (ensemble) and finite-temperature weights that discriminate the
cycle-map account from the rate-style one (thermo).
"""

from .bandmodel import (DriveParams, GapClosedOnLoop, GapStats, TopologicalIndex,
                        gap_stats, tpt_in_cycle, winding_number)
from .cyclemap import (CycleParams, IdentityCycle, OrbitAxis, SegmentPhases,
                       cycle_unitary, cycle_unitary_from_segments, orbit_axis,
                       p_g_closed, p_infinity_orbit, p_series, theta_from_tpt)
from .ensemble import EnsembleConfig, EnsembleTrace, ensemble_average, p1_staircase
from .propagator import (DegenerateMeasurementBasis, NonUnitaryEvolution,
                         PumpTrace, TrotterConfig, evolve, p_g_numeric,
                         trotter_step, unitarity_report)
from .su2 import (DegenerateSpectrum, InvalidDensityMatrix, eigensystem2,
                  exact_step, von_neumann_entropy)
from .thermo import (PumpCurve, ThermalModel, fermi, fgr_factor, fluence_sweep,
                     geometric_factor, gp_probability, temperature_sweep)
from .units import DEFAULT_OMEGA, K_BOLTZMANN_MEV_PER_K

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_OMEGA", "K_BOLTZMANN_MEV_PER_K", "__version__",
    "DegenerateSpectrum", "InvalidDensityMatrix", "eigensystem2", "exact_step",
    "von_neumann_entropy",
    "DriveParams", "GapClosedOnLoop", "GapStats", "TopologicalIndex",
    "gap_stats", "tpt_in_cycle", "winding_number",
    "CycleParams", "IdentityCycle", "OrbitAxis", "SegmentPhases",
    "cycle_unitary", "cycle_unitary_from_segments", "orbit_axis", "p_g_closed",
    "p_infinity_orbit", "p_series", "theta_from_tpt",
    "TrotterConfig", "PumpTrace", "DegenerateMeasurementBasis",
    "NonUnitaryEvolution", "evolve", "p_g_numeric", "trotter_step",
    "unitarity_report",
    "EnsembleConfig", "EnsembleTrace", "ensemble_average", "p1_staircase",
    "ThermalModel", "PumpCurve", "fermi", "fgr_factor", "geometric_factor",
    "gp_probability", "temperature_sweep", "fluence_sweep",
]
