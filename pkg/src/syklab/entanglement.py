"""Bipartitions, reduced-density-matrix spectra, the Renyi entropy family,
capacity of entanglement, anti-flatness, and the closed-form Haar / SYK-2
reference values they are compared against.

All entropies here use the natural logarithm; the stabilizer-entropy
module independently uses log2, matching the defining formulas of each
quantity.  Eigenvalues below 1e-14 are excluded from logarithm terms
(0 ln 0 := 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .pauli import _as_amplitudes
from .sre import haar_sre2

_EIG_FLOOR = 1e-14
_LN2 = math.log(2.0)

HAAR_CAPACITY = 11.0 / 4.0 - math.pi ** 2 / 3.0        # ~ -0.539868
HAAR_LOG_ANTIFLATNESS = math.log(5.0 / 4.0)            # ~ 0.223144


@dataclass(frozen=True)
class Bipartition:
    """A subsystem of qubits (1-based indices, qubit 1 = LSB)."""

    n_qubits: int
    subsystem: tuple[int, ...]

    def __post_init__(self):
        sub = tuple(sorted(set(self.subsystem)))
        if sub != tuple(self.subsystem):
            object.__setattr__(self, "subsystem", sub)
        if not sub:
            raise ValueError("subsystem must not be empty")
        if len(sub) >= self.n_qubits:
            raise ValueError("subsystem must be a proper subset of the qubits")
        if sub[0] < 1 or sub[-1] > self.n_qubits:
            raise ValueError("subsystem indices out of range")

    @property
    def size(self) -> int:
        return len(self.subsystem)

    @property
    def fraction(self) -> float:
        return len(self.subsystem) / self.n_qubits


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Descending RDM eigenvalues for one bipartition of a pure state."""

    eigenvalues: np.ndarray
    source: dict = field(default_factory=dict)

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        if np.any(lam < -1e-12):
            raise ValueError("RDM eigenvalues below -1e-12")
        lam = np.clip(lam, 0.0, None)
        if np.any(np.diff(lam) > 0):
            lam = np.sort(lam)[::-1]
        total = lam.sum()
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"RDM spectrum sums to {total}, not 1")
        object.__setattr__(self, "eigenvalues", lam / total)

    def __len__(self) -> int:
        return self.eigenvalues.size


def _as_spectrum_values(spec) -> np.ndarray:
    if isinstance(spec, EntanglementSpectrum):
        return spec.eigenvalues
    lam = np.clip(np.asarray(spec, dtype=float), 0.0, None)
    return lam / lam.sum()


# -- bipartition sampling -------------------------------------------------

def _unrank_combination(rank: int, n: int, k: int) -> tuple[int, ...]:
    """Lexicographic unranking of a k-subset of {1..n}."""
    out = []
    current = 1
    for pos in range(k):
        while True:
            block = math.comb(n - current, k - pos - 1)
            if rank < block:
                out.append(current)
                current += 1
                break
            rank -= block
            current += 1
    return tuple(out)


def sample_subsets(n_qubits: int, size: int, count: int,
                   seed: int) -> list[Bipartition]:
    """`count` distinct uniform subsets of the given size, fixed by seed."""
    total = math.comb(n_qubits, size)
    if count > total:
        raise ValueError(f"requested {count} subsets, only {total} exist")
    if count == total:
        subs = combinations(range(1, n_qubits + 1), size)
        return [Bipartition(n_qubits, s) for s in subs]
    rng = np.random.default_rng(seed)
    ranks = np.sort(rng.choice(total, size=count, replace=False))
    return [Bipartition(n_qubits, _unrank_combination(int(r), n_qubits, size))
            for r in ranks]


def sample_bipartitions(n_qubits: int, f: float, count: int,
                        seed: int) -> list[Bipartition]:
    """Uniform distinct subsets of size R = f * n_qubits (must be integral)."""
    size = f * n_qubits
    if abs(size - round(size)) > 1e-9:
        raise ValueError(f"f * n_qubits = {size} is not an integer")
    return sample_subsets(n_qubits, int(round(size)), count, seed)


# -- reduced density matrices ---------------------------------------------

def partial_trace(psi, bipartition: Bipartition) -> EntanglementSpectrum:
    """Eigenvalues of rho_R = Tr_complement |psi><psi|, descending.

    The Schmidt values come from an SVD of the amplitude matrix, so the
    spectrum is nonnegative by construction and is renormalized to unit sum.
    """
    n = bipartition.n_qubits
    amps = _as_amplitudes(psi, n)
    tensor = amps.reshape([2] * n)           # axis j holds qubit n - j
    axes = [n - q for q in bipartition.subsystem]
    tensor = np.moveaxis(tensor, axes, range(len(axes)))
    r = bipartition.size
    matrix = tensor.reshape(1 << r, 1 << (n - r))
    sv = np.linalg.svd(matrix, compute_uv=False)
    lam = np.zeros(1 << r)
    lam[:sv.size] = sv ** 2
    lam = np.sort(lam)[::-1]
    lam /= lam.sum()
    return EntanglementSpectrum(
        lam, source={"n_qubits": n, "subsystem": bipartition.subsystem})


# -- entropy family ---------------------------------------------------------

def renyi_entropy(spec, alpha: float) -> float:
    """S_alpha = ln(Tr rho^alpha) / (1 - alpha); alpha -> 1 is von Neumann."""
    if alpha <= 0:
        raise ValueError("Renyi order must be positive")
    lam = _as_spectrum_values(spec)
    lam = lam[lam > _EIG_FLOOR]
    if abs(alpha - 1.0) < 1e-12:
        return float(-(lam * np.log(lam)).sum())
    return float(np.log((lam ** alpha).sum()) / (1.0 - alpha))


def von_neumann_entropy(spec) -> float:
    return renyi_entropy(spec, 1.0)


def capacity_of_entanglement(spec) -> float:
    """d/dalpha of the modular entropy at alpha = 1: minus Var(-ln rho).

    Kept in the (nonpositive) sign convention of the modular-entropy
    derivative; report the absolute value where a magnitude is wanted.
    """
    lam = _as_spectrum_values(spec)
    lam = lam[lam > _EIG_FLOOR]
    ln = np.log(lam)
    return float(-((lam * ln ** 2).sum() - (lam * ln).sum() ** 2))


def log_antiflatness(spec) -> float:
    """F = 2 (S_2 - S_3); zero exactly on flat entanglement spectra."""
    return 2.0 * (renyi_entropy(spec, 2.0) - renyi_entropy(spec, 3.0))


def relative_gap(value: float, reference: float) -> float:
    """|(value - reference) / reference|."""
    if reference == 0:
        raise ValueError("reference value must be nonzero")
    return abs((value - reference) / reference)


# -- normalized RDM curve and the Marchenko-Pastur reference ---------------

def normalized_rdm_curve(spec) -> tuple[np.ndarray, np.ndarray]:
    """Map a half-system spectrum to (x_k, eta_k) pairs.

    x_k = sqrt(lambda_k d) / 2 and eta_k = k / d with lambda descending
    and d = 2^R.  Only (near-)half bipartitions are meaningful here; for
    odd qubit counts R = floor(n/2) is accepted, matching how half-system
    data is taken when f = 1/2 is not exactly representable.
    """
    if isinstance(spec, EntanglementSpectrum) and spec.source:
        n = spec.source["n_qubits"]
        r = len(spec.source["subsystem"])
        if r not in (n // 2, (n + 1) // 2):
            raise ValueError(
                f"normalized RDM curve needs a half-system bipartition; "
                f"got R={r} of n={n}")
    lam = _as_spectrum_values(spec)
    d = lam.size
    x = 0.5 * np.sqrt(lam * d)
    eta = np.arange(1, d + 1) / d
    return x, eta


def marchenko_pastur_eta(x) -> np.ndarray | float:
    """eta(x) = 1 - (2/pi)(x sqrt(1-x^2) + arcsin x) on [0, 1]."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > 1):
        raise ValueError("MP curve is defined on x in [0, 1]")
    out = 1.0 - (2.0 / math.pi) * (x * np.sqrt(1.0 - x ** 2) + np.arcsin(x))
    return out if out.ndim else float(out)


def marchenko_pastur_spectrum(d: int) -> np.ndarray:
    """Discrete MP reference spectrum: d eigenvalues at the curve quantiles.

    Solves eta(x_k) = (k - 1/2)/d for k = 1..d and converts back through
    lambda_k = (2 x_k)^2 / d, then renormalizes to unit sum.  Useful as
    the q-side of KL comparisons against the Haar prediction.
    """
    lam = np.empty(d)
    for k in range(1, d + 1):
        target = (k - 0.5) / d
        x = brentq(lambda t: marchenko_pastur_eta(t) - target, 0.0, 1.0,
                   xtol=1e-14)
        lam[k - 1] = (2.0 * x) ** 2 / d
    return lam / lam.sum()


# -- Haar (Page) references -------------------------------------------------

def haar_page_rescaled(f: float) -> float:
    """Leading-order Page value in the rescaled form 2 S1/(n ln 2) = 2 f."""
    if not 0.0 <= f <= 0.5:
        raise ValueError("rescaled Page value is stated for f in [0, 1/2]")
    return 2.0 * f


def haar_page_entropy(n_qubits: int, subsystem_size: int) -> float:
    """Page's average entanglement entropy R ln2 - d_A/(2 d_B), in nats."""
    r = subsystem_size
    if not 1 <= r < n_qubits:
        raise ValueError("subsystem size out of range")
    r_eff = min(r, n_qubits - r)
    d_a = 2.0 ** r_eff
    d_b = 2.0 ** (n_qubits - r_eff)
    return r_eff * _LN2 - d_a / (2.0 * d_b)


def narayana(alpha: int, k: int) -> float:
    """H(alpha, k) = C(alpha,k) C(alpha,k-1) / alpha."""
    return math.comb(alpha, k) * math.comb(alpha, k - 1) / alpha


def haar_renyi_page(alpha: int, n_qubits: int, subsystem_size: int) -> float:
    """Average Haar Renyi entropy from the Narayana-number expansion (nats)."""
    if not (isinstance(alpha, (int, np.integer)) and alpha >= 1):
        raise ValueError("the Narayana expansion needs integer alpha >= 1")
    n, r = n_qubits, subsystem_size
    if alpha == 1:
        return haar_page_entropy(n, r)
    total = sum(narayana(alpha, k) * 2.0 ** ((2 * r - n) * k)
                for k in range(1, alpha + 1))
    return (math.log(2.0 ** (n - r * (1 + alpha)) * total)) / (1 - alpha)


def haar_capacity() -> float:
    """Capacity of entanglement of Haar states: 11/4 - pi^2/3."""
    return HAAR_CAPACITY


def haar_log_antiflatness() -> float:
    """Large-N Haar value of F = 2(S2 - S3): ln(5/4)."""
    return HAAR_LOG_ANTIFLATNESS


def haar_reference(kind: str, **params):
    """Closed-form Haar reference dispatcher.

    Kinds: page_entropy (f, optionally n_qubits/subsystem_size),
    renyi_page (alpha, n_qubits, subsystem_size), mp_curve (returns the
    eta(x) callable), capacity, log_antiflatness, sre_scaling (n_qubits).
    """
    if kind == "page_entropy":
        if "n_qubits" in params:
            return haar_page_entropy(params["n_qubits"], params["subsystem_size"])
        return haar_page_rescaled(params["f"])
    if kind == "renyi_page":
        return haar_renyi_page(params["alpha"], params["n_qubits"],
                               params["subsystem_size"])
    if kind == "mp_curve":
        return marchenko_pastur_eta
    if kind == "capacity":
        return HAAR_CAPACITY
    if kind == "log_antiflatness":
        return HAAR_LOG_ANTIFLATNESS
    if kind == "sre_scaling":
        return haar_sre2(params["n_qubits"])
    raise ValueError(f"unknown Haar reference kind {kind!r}")


# -- SYK-2 closed forms ------------------------------------------------------

def syk2_entropy_coefficient(f: float) -> float:
    """K(f) = 1 - (1 + (1-f) ln(1-f)/f)/ln 2."""
    if not 0.0 < f < 1.0:
        raise ValueError("subsystem fraction must lie strictly inside (0, 1)")
    return 1.0 - (1.0 + (1.0 - f) * math.log(1.0 - f) / f) / _LN2


def syk2_mean_entropy(subsystem_size: int, f: float) -> float:
    """Closed-form average S1 of SYK-2 eigenstates: K(f) ln2 R (nats)."""
    return syk2_entropy_coefficient(f) * _LN2 * subsystem_size


def _hyp2f1_terminating(n: int, z: float) -> float:
    """2F1(1/2, 1-n; 2; z), a terminating degree n-1 polynomial, for z in [0, 1].

    The raw power series in z alternates with exponentially large terms
    near z = 1 and cancels catastrophically, so the polynomial is summed
    through the Pfaff transformation (all terms positive, prefactor folded
    into the recursion); at z = 1 Gauss's summation gives the closed form
    2 C(2n-2, n-1) / 4^(n-1) ... Gamma(n+1/2) / (Gamma(3/2) Gamma(n+1)).
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError("argument must lie in [0, 1]")
    if n == 1:
        return 1.0
    if z == 0.0:
        return 1.0
    if abs(1.0 - z) < 1e-15:
        out = 1.0
        for k in range(1, n + 1):     # prod (2k-1)/(2k) = C(2n,n)/4^n
            out *= (2 * k - 1) / (2 * k)
        return 2.0 * out
    w = z / (z - 1.0)                 # <= 0
    term = (1.0 - z) ** (n - 1)
    total = term
    for k in range(n - 1):
        term *= (1.5 + k) * (1 - n + k) / ((2.0 + k) * (1.0 + k)) * w
        total += term
    return total


def syk2_log_antiflatness(subsystem_size: int, f: float,
                          tol: float = 1e-12, max_terms: int = 2000) -> float:
    """Closed-form average F of the SYK-2 ground state.

    F(R, f) = 2 R (1-f) sum_{n>=1} (1/n) (2^-n - 3^n/(2 4^n))
                                   * 2F1(1/2, 1-n; 2; 4f(1-f)),
    summed with Kahan compensation until terms drop below tol.
    """
    if not 0.0 < f < 1.0:
        raise ValueError("subsystem fraction must lie strictly inside (0, 1)")
    z = 4.0 * f * (1.0 - f)
    total = 0.0
    comp = 0.0
    for n in range(1, max_terms + 1):
        coeff = (1.0 / n) * (0.5 ** n - 0.5 * (3.0 / 4.0) ** n)
        term = coeff * _hyp2f1_terminating(n, z)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if n > 4 and abs(term) < tol:
            break
    return 2.0 * subsystem_size * (1.0 - f) * total


def syk2_reference(kind: str, subsystem_size: int, f: float) -> float:
    if kind == "mean_entropy":
        return syk2_mean_entropy(subsystem_size, f)
    if kind == "log_antiflatness":
        return syk2_log_antiflatness(subsystem_size, f)
    raise ValueError(f"unknown SYK-2 reference kind {kind!r}")
