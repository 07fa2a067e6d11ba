"""Eigendecomposition of assembled Hamiltonians and spectrum utilities.

The dense LAPACK path is the reference for dimensions up to `DENSE_LIMIT`;
beyond it, extremal eigenpairs come from the restarted-Krylov solver in
scipy (ARPACK).  Fermion-parity sector utilities live here as well: every
SYK-q term is an even product of Majorana strings, so the assembled matrix
is block diagonal in the parity of the basis-index popcount, and
sector-resolved diagonalization is both faster and free of the arbitrary
eigenvector gauge inside cross-sector degenerate pairs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .pauli import StateVector

DENSE_LIMIT = 1 << 13
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigensystem of one Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None   # column k pairs with eigenvalue k
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        if np.any(np.diff(ev) < 0):
            raise ValueError("eigenvalues must be ascending")
        object.__setattr__(self, "eigenvalues", ev)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def _as_matrix(h) -> np.ndarray | sp.spmatrix:
    return h.matrix if hasattr(h, "matrix") else h


def full_spectrum(h, want_vectors: bool = True,
                  dense_limit: int = DENSE_LIMIT, meta: dict | None = None) -> Spectrum:
    """Complete ascending eigensystem via the dense reference solver."""
    m = _as_matrix(h)
    dim = m.shape[0]
    if dim > dense_limit:
        raise ValueError(
            f"dimension {dim} exceeds the dense limit {dense_limit}; "
            "use ground_state() (iterative extremal path) instead")
    dense = m.toarray() if sp.issparse(m) else np.asarray(m)
    if want_vectors:
        w, v = sla.eigh(dense)
        return Spectrum(w, v, meta or {})
    w = sla.eigvalsh(dense)
    return Spectrum(w, None, meta or {})


def ground_state(h, dense_limit: int = DENSE_LIMIT) -> tuple[float, np.ndarray]:
    """Lowest eigenpair; Krylov for large dims, dense below the limit."""
    m = _as_matrix(h)
    dim = m.shape[0]
    if dim <= dense_limit and (not sp.issparse(m) or dim <= 1 << 10):
        dense = m.toarray() if sp.issparse(m) else np.asarray(m)
        w, v = sla.eigh(dense, subset_by_index=[0, 0])
        return float(w[0]), v[:, 0]
    w, v = spla.eigsh(m.tocsr() if sp.issparse(m) else m, k=1, which="SA")
    return float(w[0]), v[:, 0]


def select_eigenstate(s: Spectrum, kind: str) -> StateVector:
    """'ground' -> index 0; 'middle' -> energy closest to 0 (lower index on ties)."""
    if s.eigenvectors is None:
        raise ValueError("spectrum was computed without eigenvectors")
    if kind == "ground":
        idx = 0
    elif kind == "middle":
        idx = int(np.argmin(np.abs(s.eigenvalues)))
    else:
        raise ValueError(f"unknown eigenstate kind {kind!r}")
    vec = s.eigenvectors[:, idx]
    n = s.dim.bit_length() - 1
    return StateVector(n, vec / np.linalg.norm(vec))


def collapse_degenerate(eigenvalues: Sequence[float],
                        tol: float = DEGENERACY_TOL) -> np.ndarray:
    """Merge ascending eigenvalues that agree within tol into single levels."""
    ev = np.asarray(eigenvalues, dtype=float)
    if ev.size == 0:
        return ev
    keep = np.concatenate(([True], np.diff(ev) > tol))
    return ev[keep]


def spectral_gap(s: Spectrum | Sequence[float],
                 degeneracy_tol: float = DEGENERACY_TOL) -> float:
    """E1 - E0 over distinct levels (degenerate pairs collapsed first)."""
    ev = s.eigenvalues if isinstance(s, Spectrum) else np.asarray(s, dtype=float)
    if ev.size < 2:
        raise ValueError("need at least two eigenvalues for a gap")
    levels = collapse_degenerate(np.sort(ev), degeneracy_tol)
    if levels.size < 2:
        raise ValueError("all eigenvalues coincide; no gap to report")
    return float(levels[1] - levels[0])


def strip_paired(eigenvalues: Sequence[float]) -> np.ndarray:
    """Every second eigenvalue of an ascending spectrum (degeneracy stripping)."""
    return np.asarray(eigenvalues, dtype=float)[::2]


def dos_histogram(spectra: Iterable[Sequence[float]], bins: int):
    """Normalized density of states over every-second eigenvalues.

    The stripping is applied uniformly (the SYK-4 point is exactly twice
    degenerate; elsewhere it is a plain decimation that leaves the shape
    unchanged).  Returns a HistogramPDF whose support is [min, max] of the
    pooled stripped values.
    """
    from .spacings import HistogramPDF

    pooled = [strip_paired(ev) for ev in spectra]
    if not pooled:
        raise ValueError("no spectra supplied")
    values = np.concatenate(pooled)
    densities, edges = np.histogram(values, bins=bins, density=True)
    return HistogramPDF(edges, densities, n_samples=values.size, excluded=0)


# -- fermion-parity sectors ----------------------------------------------

def parity_sector_indices(n_qubits: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis indices with even / odd popcount (conserved by SYK-q terms)."""
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    odd = (np.bitwise_count(idx) & 1).astype(bool)
    return idx[~odd], idx[odd]


def sector_matrices(h) -> tuple[np.ndarray, np.ndarray]:
    """Dense even- and odd-parity blocks of a parity-conserving matrix."""
    m = _as_matrix(h)
    dense = m.toarray() if sp.issparse(m) else np.asarray(m)
    n = dense.shape[0].bit_length() - 1
    even, odd = parity_sector_indices(n)
    return dense[np.ix_(even, even)], dense[np.ix_(odd, odd)]


def sector_eigenvalues(h) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues of the even and odd parity blocks."""
    he, ho = sector_matrices(h)
    return sla.eigvalsh(he), sla.eigvalsh(ho)


def sector_ground_state(h) -> tuple[float, np.ndarray]:
    """Lowest eigenpair resolved per parity sector (even sector on ties).

    Unlike a plain dense solve, this stays smooth through the exact
    cross-sector degeneracies of SYK-4 at g = 0, where the unresolved
    eigenvector gauge inside the doublet is arbitrary.
    """
    m = _as_matrix(h)
    dense = m.toarray() if sp.issparse(m) else np.asarray(m)
    dim = dense.shape[0]
    n = dim.bit_length() - 1
    best_energy, best_vec = np.inf, None
    for sel in parity_sector_indices(n):
        w, v = sla.eigh(dense[np.ix_(sel, sel)], subset_by_index=[0, 0])
        if w[0] < best_energy - 1e-14:
            best_energy = float(w[0])
            vec = np.zeros(dim, dtype=complex)
            vec[sel] = v[:, 0]
            best_vec = vec
    return best_energy, best_vec


def _canonical_phase(vec: np.ndarray) -> np.ndarray:
    """Fix the global phase: largest-magnitude component real positive."""
    k = int(np.argmax(np.abs(vec)))
    return vec * (np.conj(vec[k]) / abs(vec[k]))


def entangling_ground_state(h, degeneracy_tol: float = DEGENERACY_TOL
                            ) -> tuple[float, np.ndarray]:
    """Ground state as used for entanglement diagnostics.

    When the two lowest levels are exactly degenerate (the SYK-4 point has
    every level twice degenerate for N mod 8 != 0), any eigensolver returns
    an arbitrary vector of the doublet; a parity-pure choice makes the
    subsystem RDM block diagonal and superposes two independent
    entanglement spectra.  To pin down a deterministic generic member of
    the eigenspace, the two phase-canonicalized partners are mixed with
    equal weight.  Away from degeneracy this is the plain ground state.
    """
    m = _as_matrix(h)
    dense = m.toarray() if sp.issparse(m) else np.asarray(m)
    dim = dense.shape[0]
    n = dim.bit_length() - 1
    pairs = []    # (energy, embedded vector) of the two lowest per sector
    for sel in parity_sector_indices(n):
        block = dense[np.ix_(sel, sel)]
        top = min(1, block.shape[0] - 1)
        w, v = sla.eigh(block, subset_by_index=[0, top])
        for k in range(w.size):
            vec = np.zeros(dim, dtype=complex)
            vec[sel] = v[:, k]
            pairs.append((float(w[k]), vec))
    pairs.sort(key=lambda t: t[0])
    (e0, v0), (e1, v1) = pairs[0], pairs[1]
    if e1 - e0 <= degeneracy_tol:
        mixed = (_canonical_phase(v0) + _canonical_phase(v1)) / math.sqrt(2.0)
        return e0, mixed
    return e0, v0


def sector_full_spectrum(h, want_vectors: bool = True,
                         dense_limit: int = DENSE_LIMIT,
                         meta: dict | None = None) -> Spectrum:
    """Full eigensystem assembled from per-sector solves.

    Eigenvalues (and vectors) match full_spectrum up to the ordering of
    exactly degenerate cross-sector pairs, but every returned eigenvector
    carries definite fermion parity.
    """
    m = _as_matrix(h)
    dim = m.shape[0]
    if dim > dense_limit:
        raise ValueError(
            f"dimension {dim} exceeds the dense limit {dense_limit}")
    dense = m.toarray() if sp.issparse(m) else np.asarray(m)
    n = dim.bit_length() - 1
    ws, vecs = [], []
    for sel in parity_sector_indices(n):
        block = dense[np.ix_(sel, sel)]
        if want_vectors:
            w, v = sla.eigh(block)
            full = np.zeros((dim, w.size), dtype=complex)
            full[sel, :] = v
            vecs.append(full)
        else:
            w = sla.eigvalsh(block)
        ws.append(w)
    w_all = np.concatenate(ws)
    order = np.argsort(w_all, kind="stable")
    if want_vectors:
        v_all = np.concatenate(vecs, axis=1)[:, order]
        return Spectrum(w_all[order], v_all, meta or {})
    return Spectrum(w_all[order], None, meta or {})


def residual_norms(h, s: Spectrum) -> np.ndarray:
    """|| H v - lambda v || per eigenpair, for solver verification."""
    if s.eigenvectors is None:
        raise ValueError("spectrum carries no eigenvectors")
    m = _as_matrix(h)
    hv = m @ s.eigenvectors
    return np.linalg.norm(hv - s.eigenvectors * s.eigenvalues, axis=0)


def spectrum_to_csv(path, spectra: Iterable[Spectrum]) -> None:
    """Write rows (seed, N, g, index, eigenvalue)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["seed", "N", "g", "index", "eigenvalue"])
        for s in spectra:
            seed = s.meta.get("seed", "")
            n_major = s.meta.get("N", "")
            g = s.meta.get("g", "")
            for k, ev in enumerate(s.eigenvalues):
                writer.writerow([seed, n_major, g, k, repr(float(ev))])
