"""Analytic SU(2) cycle map and its long-run pumping statistics.

One drive cycle acts on the two-level state as a fixed unitary built from a
turning angle theta (how far the field direction swings between the two
straight sections), a total dynamic phase phi, and the azimuth omega_az of
the field plane. Repeated cycles trace a circular orbit on the Bloch sphere;
averaging the excited-state projection over that orbit gives the closed-form
long-run pumping probability, which the iterated per-cycle series must
reproduce. Both routes are implemented independently on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .su2 import IDENTITY2

IDENTITY_TOL = 1e-12


class IdentityCycle(Exception):
    """The cycle map is the identity up to phase; the orbit axis is undefined."""


@dataclass(frozen=True)
class CycleParams:
    """theta in [0, pi]; phi and omega_az unrestricted (radians)."""

    theta: float
    phi: float
    omega_az: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")


@dataclass(frozen=True)
class SegmentPhases:
    """Dynamic phases of the two straight sections and the arc.

    The arc phase equals the diagonal correction's angle (its two entries
    share one real angle), and the three parts must sum to the total phase
    of the owning CycleParams.
    """

    phi1: float
    phi2: float
    phi_c: float
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", self.phi1 + self.phi2 + self.phi_c)


@dataclass(frozen=True)
class OrbitAxis:
    alpha: float
    beta: float


def rotation(alpha: float, beta: float, delta: float) -> np.ndarray:
    """SU(2) rotation by delta about the axis with polar angle alpha, azimuth beta."""
    c, s = np.cos(delta / 2.0), np.sin(delta / 2.0)
    return np.array([
        [c - 1.0j * s * np.cos(alpha), -1.0j * s * np.sin(alpha) * np.exp(-1.0j * beta)],
        [-1.0j * s * np.sin(alpha) * np.exp(1.0j * beta), c + 1.0j * s * np.cos(alpha)],
    ])


def cycle_unitary(c: CycleParams) -> np.ndarray:
    """One-cycle evolution operator in the band eigenbasis."""
    ct, st = np.cos(c.theta / 2.0), np.sin(c.theta / 2.0)
    ep = np.exp(1.0j * c.phi)
    eo = np.exp(1.0j * (c.omega_az - c.phi))
    return np.array([[ct * np.conj(ep), -st * np.conj(eo)], [st * eo, ct * ep]])


def cycle_unitary_from_segments(c: CycleParams, seg: SegmentPhases) -> np.ndarray:
    """Segment-product construction: turning rotation times three diagonal phases.

    Must agree with cycle_unitary to 1e-12 whenever seg.total == c.phi; the
    turning rotation has its axis in the field plane's normal direction,
    which sits at polar angle pi/2 and azimuth omega_az + pi/2.
    """
    if abs(seg.total - c.phi) > 1e-9:
        raise ValueError(f"segment phases sum to {seg.total}, expected {c.phi}")
    turn = rotation(np.pi / 2.0, c.omega_az + np.pi / 2.0, c.theta)
    u2 = np.diag([np.exp(-1.0j * seg.phi2), np.exp(1.0j * seg.phi2)])
    lam = np.diag([np.exp(-1.0j * seg.phi_c), np.exp(1.0j * seg.phi_c)])
    u1 = np.diag([np.exp(-1.0j * seg.phi1), np.exp(1.0j * seg.phi1)])
    return turn @ u2 @ lam @ u1


def p_series(c: CycleParams, n: int) -> np.ndarray:
    """Running means of the per-cycle excited-state probabilities.

    Element j-1 is (1/j) * sum_{m<=j} |<1| U^m |0>|^2, computed by literal
    repeated application of the cycle unitary (the iterative route; the
    closed form lives in p_g_closed and must not be used here).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u = cycle_unitary(c)
    v0, v1 = 1.0 + 0.0j, 0.0j
    out = np.empty(n)
    acc = 0.0
    for j in range(n):
        v0, v1 = u[0, 0] * v0 + u[0, 1] * v1, u[1, 0] * v0 + u[1, 1] * v1
        acc += abs(v1) ** 2
        out[j] = acc / (j + 1)
    return out


def p_series_mean_grid(theta: np.ndarray, phi: np.ndarray, n: int,
                       omega_az: float = 0.0) -> np.ndarray:
    """Final running mean of the per-cycle series for whole parameter grids.

    Same literal iteration as p_series, batched over flattened (theta, phi)
    arrays; returns the n-cycle running mean per grid point.
    """
    theta = np.asarray(theta, dtype=float).ravel()
    phi = np.asarray(phi, dtype=float).ravel()
    ct, st = np.cos(theta / 2.0), np.sin(theta / 2.0)
    ep = np.exp(1.0j * phi)
    eo = np.exp(1.0j * (omega_az - phi))
    u00, u01 = ct * np.conj(ep), -st * np.conj(eo)
    u10, u11 = st * eo, ct * ep
    v0 = np.ones_like(u00)
    v1 = np.zeros_like(u00)
    acc = np.zeros(theta.shape)
    for _ in range(n):
        v0, v1 = u00 * v0 + u01 * v1, u10 * v0 + u11 * v1
        acc += np.abs(v1) ** 2
    return acc / n


def p_g_closed(c: CycleParams) -> float:
    """Long-run pumping probability in closed form; lies in [0, 1/2].

    The (theta, cos^2 phi) = (0, 1) point is a removable 0/0 and returns 0.
    """
    st2 = np.sin(c.theta / 2.0) ** 2
    den = 1.0 - (np.cos(c.theta / 2.0) * np.cos(c.phi)) ** 2
    if den < IDENTITY_TOL:
        return 0.0
    return float(0.5 * st2 / den)


def orbit_axis(c: CycleParams) -> OrbitAxis:
    """Axis of the circular orbit traced by repeated cycles.

    alpha from cos^2(alpha) = cos^2(theta/2) sin^2(phi) / denominator;
    beta = phi - omega_az - pi/2, canonicalized to [0, pi) since axis and
    anti-axis define the same orbit.

    Raises IdentityCycle when the cycle is the identity up to phase.
    """
    den = 1.0 - (np.cos(c.theta / 2.0) * np.cos(c.phi)) ** 2
    if den < IDENTITY_TOL:
        raise IdentityCycle("cycle map is diag(e^{-i phi}, e^{i phi}); no orbit")
    cos2a = (np.cos(c.theta / 2.0) * np.sin(c.phi)) ** 2 / den
    cos2a = min(1.0, max(0.0, float(cos2a)))
    alpha = float(np.arccos(np.sqrt(cos2a)))
    beta = float(np.mod(c.phi - c.omega_az - np.pi / 2.0, np.pi))
    return OrbitAxis(alpha=alpha, beta=beta)


def orbit_turn_angle(c: CycleParams) -> float:
    """Rotation angle of the cycle map about the orbit axis, in [0, 2*pi).

    cos(eta/2) = cos(theta/2) cos(phi) up to sign; returned in [0, 2*pi) by
    taking eta = 2*arccos of the clamped value.
    """
    x = float(np.clip(np.cos(c.theta / 2.0) * np.cos(c.phi), -1.0, 1.0))
    return 2.0 * float(np.arccos(x))


def p_infinity_orbit(axis: OrbitAxis, quadrature_points: int = 1024) -> float:
    """Uniform orbit average of the excited-state projection.

    The projection as a function of the orbit angle eta is
    sin^2(zeta/2) = sin^2(alpha) sin^2(eta/2); integrated with a uniform
    trapezoid rule over one turn (spectrally exact for this integrand).
    """
    if quadrature_points < 8:
        raise ValueError("quadrature_points must be >= 8")
    eta = np.arange(quadrature_points) * (2.0 * np.pi / quadrature_points)
    integrand = (np.sin(axis.alpha) * np.sin(eta / 2.0)) ** 2
    return float(integrand.mean())


def theta_from_tpt(delta_nu: int) -> float:
    """pi when the cycle crosses a topological transition, else 0."""
    if delta_nu not in (0, 1):
        raise ValueError(f"delta_nu must be 0 or 1, got {delta_nu}")
    return np.pi if delta_nu == 1 else 0.0


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(u.conj().T @ u - IDENTITY2)) <= tol)
