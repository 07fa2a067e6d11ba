"""Synthetic Haar states and Gaussian random-matrix ensembles.

These serve as ground-truth oracles for every universal reference used in
the diagnostics: Page-value entropies, Marchenko-Pastur spectra, and the
Wigner-Dyson / Poisson spacing-ratio constants.
"""

from __future__ import annotations

import numpy as np

from .pauli import StateVector

ENSEMBLE_KINDS = ("haar_state", "goe", "gue", "gse", "poisson_levels")


def sample_haar_state(n_qubits: int, seed: int) -> StateVector:
    """Unitarily-invariant random pure state (normalized complex Gaussian)."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    rng = np.random.default_rng(seed)
    d = 1 << n_qubits
    amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(n_qubits, amps / np.linalg.norm(amps))


def _goe(dim: int, rng) -> np.ndarray:
    a = rng.standard_normal((dim, dim))
    return (a + a.T) / 2.0


def _gue(dim: int, rng) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2.0


def _gse(dim: int, rng) -> np.ndarray:
    """Quaternion-real Hermitian matrix embedded as 2m x 2m complex blocks.

    H = [[A, B], [-conj(B), conj(A)]] with A Hermitian and B antisymmetric
    is Hermitian with every eigenvalue doubly degenerate (Kramers).
    """
    if dim % 2:
        raise ValueError("GSE dimension must be even (quaternion pairs)")
    m = dim // 2
    a = _gue(m, rng)
    b = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    b = (b - b.T) / 2.0
    return np.block([[a, b], [-b.conj(), a.conj()]])


def sample_rmt_spectrum(kind: str, dim: int, seed: int) -> np.ndarray:
    """Ascending eigenvalues of one draw from the named ensemble."""
    if dim < 4:
        raise ValueError("dimension must be at least 4")
    rng = np.random.default_rng(seed)
    if kind == "goe":
        return np.linalg.eigvalsh(_goe(dim, rng))
    if kind == "gue":
        return np.linalg.eigvalsh(_gue(dim, rng))
    if kind == "gse":
        return np.linalg.eigvalsh(_gse(dim, rng))
    if kind == "poisson_levels":
        return np.sort(rng.uniform(0.0, 1.0, dim))
    raise ValueError(f"unknown ensemble kind {kind!r}")
