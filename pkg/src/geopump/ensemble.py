"""Staggered-start ensemble built from the per-cycle map.

Many identical two-level systems run the same pump cycle but join the drive
at different moments, staggered by a fixed mismatch. Each member evolves
unitarily (its own entropy stays zero); averaging the pure-state projectors
over members yields a mixed density matrix whose entropy ramps up to ln 2
while the mean excited population settles at the long-run pumping value.

The single-system probability p1(t) is a staircase: the state only changes
at the instants where the drive amplitude peaks (one quarter period into
each cycle), where one application of the cycle unitary is accrued.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import su2
from .cyclemap import CycleParams, cycle_unitary

GRID_PER_CYCLE = 100


@dataclass(frozen=True)
class EnsembleConfig:
    n_systems: int = 60
    dt_mismatch: float = 0.1
    tau_cycle: float = 0.83
    t_max: float = 12.0
    cycle: CycleParams = field(default_factory=lambda: CycleParams(theta=math.pi, phi=0.0))

    def __post_init__(self):
        if self.n_systems < 1:
            raise ValueError(f"n_systems must be >= 1, got {self.n_systems}")
        if not self.dt_mismatch > 0.0:
            raise ValueError(f"dt_mismatch must be > 0, got {self.dt_mismatch}")
        if not self.tau_cycle > 0.0:
            raise ValueError(f"tau_cycle must be > 0, got {self.tau_cycle}")
        if self.dt_mismatch >= self.tau_cycle:
            raise ValueError("dt_mismatch must be smaller than tau_cycle")
        if not self.t_max > 0.0:
            raise ValueError(f"t_max must be > 0, got {self.t_max}")

    @property
    def ramp_in(self) -> float:
        """Window until every member has started, n_systems * dt_mismatch."""
        return self.n_systems * self.dt_mismatch


@dataclass(frozen=True)
class EnsembleTrace:
    times: np.ndarray
    p_ens: np.ndarray
    entropy: np.ndarray
    p_first: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        if not (len(self.p_ens) == len(self.entropy) == len(self.p_first) == n):
            raise ValueError("trace arrays are not aligned")
        if np.any(self.entropy < -1e-12) or np.any(self.entropy > math.log(2.0) + 1e-12):
            raise ValueError("entropy left [0, ln 2]")


def transition_count(t: float, tau_cycle: float) -> int:
    """Number of amplitude maxima (at (m + 1/4) tau) passed by time t, >= 0."""
    return max(0, int(math.floor(t / tau_cycle - 0.25)) + 1)


def p1_staircase(c: CycleParams, tau_cycle: float, t: float) -> float:
    """Single-system excited probability at time t (started at 0).

    Piecewise constant: |<1| U^n |0>|^2 where n counts the drive maxima passed.
    Negative t means the system has not started yet and the value is 0.
    """
    if t < 0.0:
        return 0.0
    n = transition_count(t, tau_cycle)
    u = np.linalg.matrix_power(cycle_unitary(c), n)
    return float(abs(u[1, 0]) ** 2)


def observable_from_density(rho: np.ndarray) -> float:
    """Excited-level population tr(diag(0, 1) rho)."""
    su2.validate_density(rho)
    return float(rho[1, 1].real)


def ensemble_average(cfg: EnsembleConfig) -> EnsembleTrace:
    """Average n_systems staggered copies on a tau_cycle/100 time grid.

    Member j (j = 1 is the earliest) contributes p1(t - j*dt_mismatch); the
    entropy comes from the von Neumann entropy of the member-averaged density
    matrix, built from the same staircase states.
    """
    h = cfg.tau_cycle / GRID_PER_CYCLE
    n_t = int(math.floor(cfg.t_max / h + 1e-9)) + 1
    times = np.arange(n_t) * h

    j = np.arange(1, cfg.n_systems + 1)
    elapsed = times[:, None] - j[None, :] * cfg.dt_mismatch
    counts = np.floor(elapsed / cfg.tau_cycle - 0.25).astype(int) + 1
    counts = np.maximum(counts, 0)  # covers t < 0: not started, still ground

    u = cycle_unitary(cfg.cycle)
    n_max = int(counts.max())
    amp0 = np.empty(n_max + 1, dtype=complex)
    amp1 = np.empty(n_max + 1, dtype=complex)
    state = np.array([1.0, 0.0], dtype=complex)
    for m in range(n_max + 1):
        amp0[m], amp1[m] = state
        state = u @ state

    a0 = amp0[counts]
    a1 = amp1[counts]
    rho00 = np.mean(np.abs(a0) ** 2, axis=1)
    rho11 = np.mean(np.abs(a1) ** 2, axis=1)
    rho01 = np.mean(a0 * np.conj(a1), axis=1)

    p_ens = np.empty(n_t)
    entropy = np.empty(n_t)
    for i in range(n_t):
        rho = np.array([[rho00[i], rho01[i]],
                        [np.conj(rho01[i]), rho11[i]]], dtype=complex)
        p_ens[i] = observable_from_density(rho)
        entropy[i] = su2.von_neumann_entropy(rho)

    p1_vals = np.abs(amp1) ** 2
    first_counts = np.maximum(np.floor(times / cfg.tau_cycle - 0.25).astype(int) + 1, 0)
    p_first = p1_vals[first_counts]
    return EnsembleTrace(times=times, p_ens=p_ens, entropy=entropy, p_first=p_first)
