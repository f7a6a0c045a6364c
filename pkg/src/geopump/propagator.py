"""Trotter time evolution of the driven two-band model.

The drive is exactly periodic, so the ordered product of the per-step
unitaries over one cycle is the same matrix every cycle. evolve() builds that
one-cycle product once and then applies 2x2 powers per cycle, which turns an
O(n_cycles * steps_per_cycle) walk into O(steps_per_cycle + n_cycles).
Sweeps over momentum/offset grids use the same algebra on flat component
arrays (p_g_numeric_grid), one vectorized operation per step for the whole
grid; the scalar and batched routes are cross-checked in the tests.

Because H^2 = |d|^2 I, the order-m Taylor truncation of exp(-i H dt)
collapses to cA(r) I - i dt cB(r) H with r = |d| dt, where cA and cB are the
truncated cos(r) and sin(r)/r series. Truncation at odd/even order controls
how fast the step's non-unitarity r^(order+1)-scale defect accumulates; the
exact mode replaces cA, cB by cos and sinc and is unitary to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import su2
from .bandmodel import DriveParams, bloch_vector, hamiltonian
from .su2 import DegenerateSpectrum, eigensystem2, exact_step

UNITARITY_BUDGET = 0.05
PROBABILITY_TOL = 1e-6

MODES = ("taylor", "exact")


class DegenerateMeasurementBasis(Exception):
    """Instantaneous gap at the measurement time is below the degeneracy tolerance."""


class NonUnitaryEvolution(Exception):
    """Accumulated truncation defect exceeded the budget, or probabilities left [0, 1]."""


@dataclass(frozen=True)
class TrotterConfig:
    steps_per_cycle: int = 20000
    taylor_order: int = 4
    mode: str = "exact"
    n_cycles: int = 100
    measure_offset: float = 0.0

    def __post_init__(self):
        if self.steps_per_cycle < 100:
            raise ValueError(f"steps_per_cycle must be >= 100, got {self.steps_per_cycle}")
        if self.taylor_order < 1:
            raise ValueError(f"taylor_order must be >= 1, got {self.taylor_order}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n_cycles < 1:
            raise ValueError(f"n_cycles must be >= 1, got {self.n_cycles}")
        if not 0.0 <= self.measure_offset < 1.0:
            raise ValueError(f"measure_offset must lie in [0, 1), got {self.measure_offset}")


@dataclass(frozen=True)
class PumpTrace:
    """Per-cycle excited-band probabilities, their running means, and the
    largest unitarity defect seen at any measurement time."""

    p_j: np.ndarray
    p_n: np.ndarray
    unitarity_defect: float


def _taylor_coeffs(r: np.ndarray, order: int):
    """Truncated cos(r) and sin(r)/r series up to the r^order term of exp."""
    r2 = r * r
    ca = np.zeros_like(r)
    cb = np.zeros_like(r)
    ta = np.ones_like(r)  # r^(2n) / (2n)!
    tb = np.ones_like(r)  # r^(2n) / (2n+1)!
    for n in range(order // 2 + 1):
        if n > 0:
            ta = ta * r2 / ((2 * n - 1) * (2 * n))
            tb = tb * r2 / ((2 * n) * (2 * n + 1))
        sign = -1.0 if n % 2 else 1.0
        ca = ca + sign * ta
        if 2 * n + 1 <= order:
            cb = cb + sign * tb
    return ca, cb


def trotter_step(p: DriveParams, t_j: float, dt: float, order: int) -> np.ndarray:
    """Truncated Taylor propagator sum_{m<=order} (-i H(t_j) dt)^m / m!.

    order = 1 is allowed so the non-unitary first-order artifact can be
    demonstrated; production evolution requires order >= 2.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    d = bloch_vector(p, t_j)
    r = float(np.sqrt(d @ d)) * dt
    ca, cb = _taylor_coeffs(np.array(r), order)
    return ca * su2.IDENTITY2 - 1.0j * dt * cb * su2.bloch_matrix(d)


def _measurement_setup(p: DriveParams, cfg: TrotterConfig):
    """Snapped offset step count and the (fixed) measurement eigenbasis."""
    dt = p.tau_cycle / cfg.steps_per_cycle
    extra = int(round(cfg.measure_offset * cfg.steps_per_cycle))
    t_meas = extra * dt
    try:
        _, _, n0, n1 = eigensystem2(hamiltonian(p, t_meas))
    except DegenerateSpectrum as exc:
        raise DegenerateMeasurementBasis(
            f"gap closed at measurement time {t_meas:.6g} (k={p.k}, eps0={p.eps0})"
        ) from exc
    return dt, extra, n0, n1


def _step_matrix(p: DriveParams, t_mid: float, dt: float, cfg: TrotterConfig) -> np.ndarray:
    if cfg.mode == "exact":
        return exact_step(bloch_vector(p, t_mid), dt)
    return trotter_step(p, t_mid, dt, cfg.taylor_order)


def _evolve_impl(p: DriveParams, cfg: TrotterConfig, initial, enforce_budget: bool):
    dt, extra, n0, n1 = _measurement_setup(p, cfg)
    if initial is None:
        _, _, g0, _ = eigensystem2(hamiltonian(p, 0.0))
        psi0 = g0
    else:
        psi0 = np.asarray(initial, dtype=complex)
        norm = float(np.sum(np.abs(psi0) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"initial state norm^2 = {norm}, expected 1")

    u_cycle = su2.IDENTITY2
    u_partial = su2.IDENTITY2
    for j in range(cfg.steps_per_cycle):
        step = _step_matrix(p, (j + 0.5) * dt, dt, cfg)
        u_cycle = step @ u_cycle
        if j + 1 == extra:
            u_partial = u_cycle.copy()

    p_j = np.empty(cfg.n_cycles)
    w = su2.IDENTITY2
    defect = 0.0
    for m in range(cfg.n_cycles):
        w = u_cycle @ w
        meas = u_partial @ w if extra else w
        defect = max(defect, su2.unitarity_defect(meas))
        amp = (n1.conj() @ (meas @ psi0))
        p_j[m] = abs(amp) ** 2

    if enforce_budget and cfg.mode == "taylor" and defect > UNITARITY_BUDGET:
        raise NonUnitaryEvolution(
            f"unitarity defect {defect:.3e} exceeds budget {UNITARITY_BUDGET}")
    bad = (p_j < -PROBABILITY_TOL) | (p_j > 1.0 + PROBABILITY_TOL)
    if enforce_budget and np.any(bad):
        worst = p_j[np.argmax(np.abs(p_j - 0.5))]
        raise NonUnitaryEvolution(f"probability {worst} outside [0, 1] beyond tolerance")
    p_j = np.clip(p_j, 0.0, 1.0)
    p_n = np.cumsum(p_j) / np.arange(1, cfg.n_cycles + 1)
    return PumpTrace(p_j=p_j, p_n=p_n, unitarity_defect=defect)


def evolve(p: DriveParams, cfg: TrotterConfig, initial: np.ndarray | None = None) -> PumpTrace:
    """Evolve one momentum over n_cycles and measure after each cycle.

    The state starts from `initial` (default: instantaneous ground state at
    t = 0) and p_j is the excited-band weight against the instantaneous
    eigenbasis at the measurement times (j + measure_offset) * tau_cycle,
    with the offset snapped to the step grid.

    Raises DegenerateMeasurementBasis when that basis is ill-defined, and, in
    taylor mode, NonUnitaryEvolution when the truncation defect exceeds the
    module budget. taylor mode requires taylor_order >= 2 here.
    """
    if cfg.mode == "taylor" and cfg.taylor_order < 2:
        raise ValueError("taylor mode below second order is only for diagnostics; "
                         "use unitarity_report")
    return _evolve_impl(p, cfg, initial, enforce_budget=True)


def p_g_numeric(p: DriveParams, cfg: TrotterConfig) -> float:
    """Final running mean p_n[n_cycles], the numerical long-run pumping value."""
    return float(evolve(p, cfg).p_n[-1])


def unitarity_report(p: DriveParams, cfg: TrotterConfig):
    """Run taylor and exact modes on identical grids, without the budget gate.

    Returns (defect_taylor, max_dev_vs_exact): the taylor mode's accumulated
    unitarity defect and the largest |p_n| discrepancy between modes.
    """
    taylor_cfg = cfg if cfg.mode == "taylor" else TrotterConfig(
        steps_per_cycle=cfg.steps_per_cycle, taylor_order=cfg.taylor_order,
        mode="taylor", n_cycles=cfg.n_cycles, measure_offset=cfg.measure_offset)
    exact_cfg = TrotterConfig(
        steps_per_cycle=cfg.steps_per_cycle, taylor_order=cfg.taylor_order,
        mode="exact", n_cycles=cfg.n_cycles, measure_offset=cfg.measure_offset)
    trace_t = _evolve_impl(p, taylor_cfg, None, enforce_budget=False)
    trace_e = _evolve_impl(p, exact_cfg, None, enforce_budget=False)
    max_dev = float(np.max(np.abs(trace_t.p_n - trace_e.p_n)))
    return float(trace_t.unitarity_defect), max_dev


def p_g_numeric_grid(k: np.ndarray, eps0: np.ndarray, a_ph: np.ndarray,
                     omega: float, cfg: TrotterConfig) -> np.ndarray:
    """Batched p_g_numeric over flat parameter arrays (ground-state start).

    All inputs broadcast to a common flat shape. Each grid point follows the
    identical step algebra as evolve; points whose measurement basis is
    degenerate raise DegenerateMeasurementBasis with the offending indices.
    """
    k, eps0, a_ph = np.broadcast_arrays(
        np.asarray(k, dtype=float), np.asarray(eps0, dtype=float),
        np.asarray(a_ph, dtype=float))
    k = k.ravel(); eps0 = eps0.ravel(); a_ph = a_ph.ravel()
    if cfg.mode == "taylor" and cfg.taylor_order < 2:
        raise ValueError("taylor mode below second order is only for diagnostics")

    tau = 2.0 * math.pi / omega
    dt = tau / cfg.steps_per_cycle
    extra = int(round(cfg.measure_offset * cfg.steps_per_cycle))
    d2 = np.sin(k)
    c3 = -(eps0 + np.cos(k))  # d3(t) = c3 - a_ph * sin(omega t)

    # measurement-time and start-time bases; both pristine-periodic instants
    s_meas = math.sin(omega * extra * dt)
    gap_meas = 2.0 * np.hypot(d2, c3 - a_ph * s_meas)
    if np.any(gap_meas < su2.DEGENERACY_TOL):
        idx = np.nonzero(gap_meas < su2.DEGENERACY_TOL)[0]
        raise DegenerateMeasurementBasis(
            f"gap closed at measurement time for grid indices {idx.tolist()[:8]}")
    gap_start = 2.0 * np.hypot(d2, c3)
    if np.any(gap_start < su2.DEGENERACY_TOL):
        idx = np.nonzero(gap_start < su2.DEGENERACY_TOL)[0]
        raise DegenerateMeasurementBasis(
            f"gap closed at the start time for grid indices {idx.tolist()[:8]}")

    one = np.ones_like(k, dtype=complex)
    zero = np.zeros_like(k, dtype=complex)
    u00, u01, u10, u11 = one.copy(), zero.copy(), zero.copy(), one.copy()
    q00, q01, q10, q11 = one.copy(), zero.copy(), zero.copy(), one.copy()
    for j in range(cfg.steps_per_cycle):
        s = math.sin(omega * (j + 0.5) * dt)
        d3 = c3 - a_ph * s
        r = np.hypot(d2, d3) * dt
        if cfg.mode == "exact":
            ca = np.cos(r)
            kappa = dt * np.sinc(r / np.pi)
        else:
            ca, cb = _taylor_coeffs(r, cfg.taylor_order)
            kappa = dt * cb
        # step = ca*I - i*kappa*(d2*sigma2 + d3*sigma3)
        s00 = ca - 1.0j * kappa * d3
        s11 = ca + 1.0j * kappa * d3
        off = kappa * d2
        u00, u01, u10, u11 = (s00 * u00 - off * u10, s00 * u01 - off * u11,
                              off * u00 + s11 * u10, off * u01 + s11 * u11)
        if j + 1 == extra:
            q00, q01, q10, q11 = u00.copy(), u01.copy(), u10.copy(), u11.copy()

    # ground state of the pristine H and excited state at the measurement time,
    # phase-fixed the same way as eigensystem2 (largest component real positive)
    g0a, g0b = _eig_components(d2, c3, lower=True)
    m1a, m1b = _eig_components(d2, c3 - a_ph * s_meas, lower=False)

    c0, c1 = g0a.astype(complex), g0b.astype(complex)
    acc = np.zeros_like(k)
    for _ in range(cfg.n_cycles):
        c0, c1 = u00 * c0 + u01 * c1, u10 * c0 + u11 * c1
        if extra:
            m0 = q00 * c0 + q01 * c1
            m1 = q10 * c0 + q11 * c1
        else:
            m0, m1 = c0, c1
        amp = np.conj(m1a) * m0 + np.conj(m1b) * m1
        acc += np.abs(amp) ** 2
    return acc / cfg.n_cycles


def _eig_components(d2: np.ndarray, d3: np.ndarray, lower: bool):
    """Eigenvector components of d2*sigma2 + d3*sigma3 for the lower or upper band.

    Closed form: for eigenvalue sign e = -1 or +1, E = e*|d| and the
    (unnormalized) vector is (d3 + E, i*d2) unless that degenerates.
    """
    nd = np.hypot(d2, d3)
    e = -nd if lower else nd
    va = d3 + e
    vb = 1.0j * d2
    # where the representative vector vanishes (d2 = 0, d3 = -E), use (0, 1)
    tiny = np.abs(va) + np.abs(vb) < 1e-14
    va = np.where(tiny, 0.0, va)
    vb = np.where(tiny, 1.0, vb)
    norm = np.sqrt(np.abs(va) ** 2 + np.abs(vb) ** 2)
    va = va / norm
    vb = vb / norm
    # global phase: largest-magnitude component real positive
    big = np.where(np.abs(va) >= np.abs(vb), va, vb)
    phase = np.abs(big) / big
    return va * phase, vb * phase
