"""Consecutive-spacing-ratio statistics, reference RMT distributions,
Kullback-Leibler divergence and the KL-fidelity transition probe.

Ratios are r_k = s_{k+1} / s_k over the spacings s_k of an ascending
spectrum; mean min/max ratios and P(r) histograms are compared against
the Wigner-Dyson surmises (beta = 1, 2, 4) and the Poisson form
1/(1+r)^2.  Exact zero spacings, as produced by degenerate pairs, are
dropped before ratios are formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .fits import FitResult, polynomial_peak

RATIO_CUTOFF = 10.0
SPACING_TOL = 1e-12
_KL_FLOOR = 1e-12

RBAR_POISSON = 2 * math.log(2) - 1                      # 0.38629...
RBAR_GOE = 4 - 2 * math.sqrt(3)                         # 0.53590...
RBAR_GUE = 2 * math.sqrt(3) / math.pi - 0.5             # 0.60266...
RBAR_GSE = (32 / 15) * math.sqrt(3) / math.pi - 0.5     # 0.67617...

_WD_BETA = {"wd_goe": 1, "wd_gue": 2, "wd_gse": 4}
_WD_NORM = {
    1: 8 / 27,
    2: (4 / 81) * math.pi / math.sqrt(3),
    4: (4 / 729) * math.pi / math.sqrt(3),
}


@dataclass(frozen=True)
class HistogramPDF:
    """Normalized histogram with its outlier bookkeeping."""

    bin_edges: np.ndarray
    densities: np.ndarray
    n_samples: int
    excluded: int = 0

    def __post_init__(self):
        edges = np.asarray(self.bin_edges, dtype=float)
        dens = np.asarray(self.densities, dtype=float)
        if edges.size != dens.size + 1:
            raise ValueError("bin_edges must have one more entry than densities")
        if np.any(np.diff(edges) <= 0):
            raise ValueError("bin edges must be strictly ascending")
        if np.any(dens < 0):
            raise ValueError("densities must be nonnegative")
        total = float(np.sum(dens * np.diff(edges)))
        if self.n_samples > 0 and abs(total - 1.0) > 1e-9:
            raise ValueError(f"histogram integrates to {total}, not 1")
        object.__setattr__(self, "bin_edges", edges)
        object.__setattr__(self, "densities", dens)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def masses(self) -> np.ndarray:
        return self.densities * self.widths

    @property
    def support(self) -> tuple[float, float]:
        return float(self.bin_edges[0]), float(self.bin_edges[-1])


def gap_ratios(eigenvalues: Sequence[float],
               spacing_tol: float = SPACING_TOL) -> np.ndarray:
    """r_k = (e_{k+1} - e_k) / (e_k - e_{k-1}) on an ascending spectrum.

    Spacings below spacing_tol (degenerate pairs) are removed first, so
    a twice-degenerate spectrum yields the ratios of its distinct levels.
    """
    ev = np.asarray(eigenvalues, dtype=float)
    if ev.size < 3:
        raise ValueError("need at least 3 eigenvalues")
    if np.any(np.diff(ev) < -spacing_tol):
        raise ValueError("eigenvalues must be ascending")
    s = np.diff(ev)
    s = s[s > spacing_tol]
    if s.size < 2:
        raise ValueError("fewer than 2 nonzero spacings")
    return s[1:] / s[:-1]


def min_max_ratios(eigenvalues: Sequence[float],
                   spacing_tol: float = SPACING_TOL) -> np.ndarray:
    """min(s_k, s_{k+1}) / max(s_k, s_{k+1}) per level, all in [0, 1]."""
    ev = np.asarray(eigenvalues, dtype=float)
    s = np.diff(ev)
    s = s[s > spacing_tol]
    if s.size < 2:
        raise ValueError("fewer than 2 nonzero spacings")
    return np.minimum(s[1:], s[:-1]) / np.maximum(s[1:], s[:-1])


def average_ratio(spectra: Iterable[Sequence[float]],
                  spacing_tol: float = SPACING_TOL) -> float:
    """Mean min/max consecutive spacing ratio over levels and realizations."""
    chunks = [min_max_ratios(ev, spacing_tol) for ev in spectra]
    if not chunks:
        raise ValueError("no spectra supplied")
    return float(np.concatenate(chunks).mean())


def ess_histogram(ratios: Sequence[float], bins: int = 100,
                  cutoff: float = RATIO_CUTOFF) -> HistogramPDF:
    """Normalized P(r) histogram on [0, cutoff]; outliers r > cutoff counted out."""
    if bins < 2:
        raise ValueError("need at least 2 bins")
    r = np.asarray(ratios, dtype=float)
    kept = r[r <= cutoff]
    excluded = int(r.size - kept.size)
    if kept.size == 0:
        raise ValueError("all ratio samples exceed the cutoff")
    densities, edges = np.histogram(kept, bins=bins, range=(0.0, cutoff),
                                    density=True)
    return HistogramPDF(edges, densities, n_samples=int(kept.size),
                        excluded=excluded)


def reference_pdf(kind: str, r) -> np.ndarray | float:
    """Density of the Poisson or Wigner-Dyson consecutive-ratio surmise."""
    r = np.asarray(r, dtype=float)
    if kind == "poisson":
        out = 1.0 / (1.0 + r) ** 2
    elif kind in _WD_BETA:
        beta = _WD_BETA[kind]
        out = ((r + r ** 2) ** beta
               / (1.0 + r + r ** 2) ** (1 + 1.5 * beta)) / _WD_NORM[beta]
    else:
        raise ValueError(f"unknown reference pdf {kind!r}")
    return out if out.ndim else float(out)


def reference_bin_masses(kind: str, bin_edges: Sequence[float],
                         subsamples: int = 16) -> np.ndarray:
    """Reference probability mass per bin via midpoint-rule integration.

    Point-sampling a curved density at 100 bins biases the KL comparison;
    16 midpoint subsamples per bin remove that at negligible cost.
    """
    edges = np.asarray(bin_edges, dtype=float)
    widths = np.diff(edges)
    offsets = (np.arange(subsamples) + 0.5) / subsamples
    grid = edges[:-1, None] + widths[:, None] * offsets[None, :]
    vals = reference_pdf(kind, grid.ravel()).reshape(grid.shape)
    return vals.mean(axis=1) * widths


def kl_divergence(p, q) -> float:
    """D_KL(p || q) = sum_i p_i (ln p_i - ln q_i) over probability masses.

    `p` may be a HistogramPDF (its bin masses are used) or a plain mass
    vector; `q` is a mass vector on the same bins.  Bins with p_i = 0
    contribute nothing; q_i = 0 under p_i > 0 is floored at 1e-12.
    """
    p_mass = p.masses if isinstance(p, HistogramPDF) else np.asarray(p, dtype=float)
    q_mass = np.asarray(q, dtype=float)
    if p_mass.shape != q_mass.shape:
        raise ValueError("p and q live on different bins")
    if np.any(p_mass < 0) or np.any(q_mass < 0):
        raise ValueError("probability masses must be nonnegative")
    mask = p_mass > 0
    q_safe = np.maximum(q_mass[mask], _KL_FLOOR)
    return float(np.sum(p_mass[mask] * (np.log(p_mass[mask]) - np.log(q_safe))))


def kl_fidelity_scan(rdm_curves: dict[float, Sequence[float]],
                     epsilon: float) -> list[tuple[float, float]]:
    """D_KL(eta_g || eta_{g+eps}) between averaged RDM spectra on a g grid.

    The grid must be uniform with a spacing that divides epsilon; each
    spectrum is renormalized to unit mass before comparison.
    """
    gs = np.array(sorted(rdm_curves), dtype=float)
    if gs.size < 2:
        raise ValueError("need at least two grid points")
    steps = np.diff(gs)
    step = steps[0]
    if np.any(np.abs(steps - step) > 1e-9):
        raise ValueError("g grid is not uniform")
    n_step = epsilon / step
    if abs(n_step - round(n_step)) > 1e-6 or round(n_step) < 1:
        raise ValueError(f"grid spacing {step} does not divide epsilon {epsilon}")
    n_step = int(round(n_step))

    spectra = {}
    size = None
    for g in gs:
        lam = np.asarray(rdm_curves[g], dtype=float)
        if size is None:
            size = lam.size
        elif lam.size != size:
            raise ValueError("spectra have mismatched lengths across g")
        spectra[g] = lam / lam.sum()

    out = []
    for i in range(gs.size - n_step):
        g, g_next = gs[i], gs[i + n_step]
        out.append((float(g), kl_divergence(spectra[g], spectra[g_next])))
    return out


@dataclass(frozen=True)
class TransitionEstimate:
    g_c: float
    boundary: bool
    fit: FitResult


def transition_point(fidelity_curve: Sequence[tuple[float, float]],
                     poly_degree: int = 10) -> TransitionEstimate:
    """Peak of a degree-`poly_degree` polynomial fit to a fidelity curve.

    A maximum landing on the scan edge is returned with boundary=True,
    marking the peak estimate as unreliable.
    """
    pts = np.asarray(list(fidelity_curve), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("fidelity curve must be (g, value) pairs")
    if pts.shape[0] < poly_degree + 2:
        raise ValueError(
            f"need at least {poly_degree + 2} points for a degree "
            f"{poly_degree} peak fit")
    location, fit = polynomial_peak(pts[:, 0], pts[:, 1], degree=poly_degree)
    return TransitionEstimate(g_c=float(location),
                              boundary="boundary" in fit.flags, fit=fit)


def rescaled_fidelity(curve: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Divide a fidelity curve by its maximum (plotting normalization)."""
    pts = list(curve)
    peak = max(v for _, v in pts)
    if peak <= 0:
        return [(g, 0.0) for g, _ in pts]
    return [(g, v / peak) for g, v in pts]
