"""Exact 2x2 complex linear algebra for two-level dynamics.

States are length-2 complex ndarrays, operators are (2, 2) complex ndarrays,
and Bloch vectors are length-3 real ndarrays with H = d . sigma. Everything
here is allocation-light and pure; no scipy.
"""

from __future__ import annotations

import numpy as np

DEGENERACY_TOL = 1e-9
UNITARITY_TOL = 1e-10
DENSITY_TOL = 1e-12

PAULI = {
    1: np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    2: np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    3: np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

IDENTITY2 = np.eye(2, dtype=complex)


class DegenerateSpectrum(Exception):
    """Eigenvalue splitting below the degeneracy tolerance."""


class InvalidDensityMatrix(Exception):
    """Input violates the density-matrix invariants beyond tolerance."""


def bloch_matrix(d: np.ndarray) -> np.ndarray:
    """Assemble H = d1*sigma1 + d2*sigma2 + d3*sigma3."""
    d1, d2, d3 = d
    return np.array([[d3, d1 - 1.0j * d2], [d1 + 1.0j * d2, -d3]], dtype=complex)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude component is real positive."""
    i = int(np.argmax(np.abs(v)))
    a = v[i]
    if abs(a) == 0.0:
        return v
    return v * (abs(a) / a)


def eigensystem2(h: np.ndarray):
    """Eigendecomposition of a 2x2 Hermitian matrix.

    Returns (e0, e1, n0, n1) with e0 <= e1 and the eigenvector global phase
    fixed by making the largest-magnitude component real positive.

    Raises DegenerateSpectrum when e1 - e0 < DEGENERACY_TOL.
    """
    w, v = np.linalg.eigh(h)
    e0, e1 = float(w[0]), float(w[1])
    if e1 - e0 < DEGENERACY_TOL:
        raise DegenerateSpectrum(f"gap {e1 - e0:.3e} below tolerance {DEGENERACY_TOL:.0e}")
    return e0, e1, _fix_phase(v[:, 0].copy()), _fix_phase(v[:, 1].copy())


def exact_step(d: np.ndarray, dt: float) -> np.ndarray:
    """Closed-form unitary exp(-i (d . sigma) dt).

    Uses cos(r) I - i dt sinc(r) (d . sigma) with r = |d| dt, so the |d| -> 0
    limit is the identity with no special casing.
    """
    d = np.asarray(d, dtype=float)
    norm = float(np.sqrt(d @ d))
    r = norm * dt
    # np.sinc is sin(pi x)/(pi x)
    kappa = dt * np.sinc(r / np.pi)
    h = bloch_matrix(d)
    return np.cos(r) * IDENTITY2 - 1.0j * kappa * h


def validate_density(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise InvalidDensityMatrix(f"shape {rho.shape} is not (2, 2)")
    if not np.all(np.isfinite(rho.view(float))):
        raise InvalidDensityMatrix("non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > DENSITY_TOL:
        raise InvalidDensityMatrix("not Hermitian within tolerance")
    if abs(np.trace(rho).real - 1.0) > DENSITY_TOL:
        raise InvalidDensityMatrix("trace differs from 1 beyond tolerance")
    lam = np.linalg.eigvalsh(rho)
    if lam[0] < -DENSITY_TOL:
        raise InvalidDensityMatrix(f"negative eigenvalue {lam[0]:.3e}")
    return rho


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S = -tr(rho ln rho) with 0 ln 0 = 0; lies in [0, ln 2] for one qubit."""
    rho = validate_density(rho)
    lam = np.linalg.eigvalsh(rho)
    s = 0.0
    for x in lam:
        if x > 0.0:
            s -= x * np.log(x)
    return float(s)


def pure_density(psi: np.ndarray) -> np.ndarray:
    """Projector |psi><psi| of a normalized state."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def unitarity_defect(u: np.ndarray) -> float:
    """max |(U^H U - I)_{ij}|"""
    return float(np.max(np.abs(u.conj().T @ u - IDENTITY2)))
