"""Symplectic Pauli-string algebra on n qubits.

An n-qubit Pauli operator is stored as a pair of bit masks plus a phase
exponent:

    P = i^phase_exp * s_1 (x) s_2 (x) ... (x) s_n

where the single-qubit factor on qubit j is picked by bit j-1 of the masks:

    (x_bit, z_bit) = (0,0) -> I, (1,0) -> X, (0,1) -> Z, (1,1) -> Y.

Qubit 1 is the least-significant bit of a computational basis index.  The
base tensor is Hermitian by construction, so P is Hermitian exactly when
phase_exp is even.  Products cost O(1) mask arithmetic; no 4^n tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}
_PHASE_LABEL = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_LABEL_PHASE = {v: k for k, v in _PHASE_LABEL.items()}

_I2 = np.eye(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SINGLE = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}


@dataclass(frozen=True)
class PauliString:
    """A signed N-qubit Pauli operator in symplectic bit-mask form."""

    n_qubits: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError("mask does not fit within n_qubits bits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> "PauliString":
        """Single-qubit Pauli `letter` on `qubit` (1-based, LSB first)."""
        if not 1 <= qubit <= n_qubits:
            raise ValueError(f"qubit {qubit} out of range 1..{n_qubits}")
        xb, zb = _BITS[letter]
        bit = 1 << (qubit - 1)
        return cls(n_qubits, xb * bit, zb * bit)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse the canonical rendering, e.g. ``+1 XZIY`` or ``XZIY``."""
        parts = label.split()
        if len(parts) == 2:
            phase = _LABEL_PHASE[parts[0]]
            letters = parts[1]
        elif len(parts) == 1:
            phase, letters = 0, parts[0]
        else:
            raise ValueError(f"cannot parse pauli label {label!r}")
        x = z = 0
        for j, ch in enumerate(letters):  # leftmost letter = qubit 1
            xb, zb = _BITS[ch]
            x |= xb << j
            z |= zb << j
        return cls(len(letters), x, z, phase)

    # -- structure ----------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0 and self.phase_exp == 0

    @property
    def is_hermitian(self) -> bool:
        # base tensor is Hermitian, so only the i^phase prefactor matters
        return self.phase_exp % 2 == 0

    @property
    def phase(self) -> complex:
        return 1j ** self.phase_exp

    def weight(self) -> int:
        """Number of non-identity tensor factors."""
        return (self.x_mask | self.z_mask).bit_count()

    def letters(self) -> str:
        return "".join(
            _LETTERS[((self.x_mask >> j) & 1, (self.z_mask >> j) & 1)]
            for j in range(self.n_qubits)
        )

    def __str__(self) -> str:
        return f"{_PHASE_LABEL[self.phase_exp]} {self.letters()}"

    # -- algebra ------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def commutes_with(self, other: "PauliString") -> bool:
        anti = ((self.x_mask & other.z_mask).bit_count()
                + (self.z_mask & other.x_mask).bit_count()) & 1
        return anti == 0

    def hermitian_conjugate(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x_mask, self.z_mask, -self.phase_exp)

    # -- action on states ---------------------------------------------

    def apply_to_basis(self, basis_index: int) -> tuple[int, complex]:
        """P|b> = amplitude * |b XOR x_mask>, |amplitude| = 1."""
        if not 0 <= basis_index < (1 << self.n_qubits):
            raise ValueError("basis index out of range")
        p = (self.phase_exp + (self.x_mask & self.z_mask).bit_count()) % 4
        sign = -1.0 if (self.z_mask & basis_index).bit_count() & 1 else 1.0
        return basis_index ^ self.x_mask, complex(1j ** p) * sign

    def column_amplitudes(self, dim: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized apply_to_basis: (row indices, amplitudes) for all columns."""
        d = dim if dim is not None else (1 << self.n_qubits)
        b = np.arange(d, dtype=np.int64)
        rows = b ^ self.x_mask
        p = (self.phase_exp + (self.x_mask & self.z_mask).bit_count()) % 4
        signs = 1.0 - 2.0 * (np.bitwise_count(b & np.int64(self.z_mask)) & 1)
        return rows, (1j ** p) * signs

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        """Return P|psi> without materializing P."""
        amplitudes = np.asarray(amplitudes)
        rows, amps = self.column_amplitudes(amplitudes.shape[0])
        out = np.empty_like(amplitudes, dtype=complex)
        out[rows] = amps * amplitudes
        return out

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; intended for small n only."""
        d = 1 << self.n_qubits
        rows, amps = self.column_amplitudes(d)
        m = np.zeros((d, d), dtype=complex)
        m[rows, np.arange(d)] = amps
        return m


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact product a*b with the accumulated i^k phase."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    x = a.x_mask ^ b.x_mask
    z = a.z_mask ^ b.z_mask
    # phases from rewriting each Y as iXZ, commuting Z past X, and
    # recombining XZ into Y on the result
    phase = (a.phase_exp + b.phase_exp
             + (a.x_mask & a.z_mask).bit_count()
             + (b.x_mask & b.z_mask).bit_count()
             + 2 * (a.z_mask & b.x_mask).bit_count()
             - (x & z).bit_count())
    return PauliString(a.n_qubits, x, z, phase % 4)


def expectation(p: PauliString, psi: "StateVector | np.ndarray") -> float:
    """<psi|P|psi> for Hermitian P, in O(2^n) without building the matrix."""
    if not p.is_hermitian:
        raise ValueError(f"expectation of non-Hermitian string {p}")
    amplitudes = _as_amplitudes(psi, p.n_qubits)
    rows, amps = p.column_amplitudes(amplitudes.shape[0])
    val = np.vdot(amplitudes[rows], amps * amplitudes)
    return float(val.real)


def apply_to_basis(p: PauliString, basis_index: int) -> tuple[int, complex]:
    return p.apply_to_basis(basis_index)


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state on n qubits; qubit 1 is the LSB of the index."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    _NORM_TOL = 1e-10

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"amplitude vector of length {amps.shape} does not match "
                f"{self.n_qubits} qubits")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > self._NORM_TOL:
            raise ValueError(f"state not normalized: |psi| = {norm!r}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis_state(cls, n_qubits: int, index: int = 0) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        n = int(np.log2(amps.size))
        if 1 << n != amps.size:
            raise ValueError("amplitude vector length is not a power of two")
        return cls(n, amps / np.linalg.norm(amps))


def _as_amplitudes(psi, n_qubits: int | None = None) -> np.ndarray:
    """Accept a StateVector or a raw complex vector."""
    amps = np.asarray(getattr(psi, "amplitudes", psi), dtype=complex)
    if n_qubits is not None and amps.shape != (1 << n_qubits,):
        raise ValueError(
            f"state of dimension {amps.shape[0]} does not match {n_qubits} qubits")
    return amps


class PauliSum:
    """Real-weighted sum of Pauli strings representing a Hermitian operator.

    Each term's i^phase is absorbed into its coefficient at construction;
    a residual imaginary part above tolerance is rejected because the
    represented operator would not be Hermitian.  Duplicate strings are
    merged, zero coefficients dropped.
    """

    _IMAG_TOL = 1e-12

    def __init__(self, n_qubits: int,
                 terms: Iterable[tuple[float | complex, PauliString]] = ()):
        self.n_qubits = n_qubits
        self._terms: dict[tuple[int, int], float] = {}
        for coeff, string in terms:
            self.add_term(coeff, string)

    def add_term(self, coeff: float | complex, string: PauliString) -> None:
        if string.n_qubits != self.n_qubits:
            raise ValueError("term qubit count does not match the sum")
        c = complex(coeff) * string.phase
        scale = max(1.0, abs(c))
        if abs(c.imag) > self._IMAG_TOL * scale:
            raise ValueError(
                f"non-Hermitian term: coefficient {coeff!r} * {string} "
                "has an imaginary residue")
        key = (string.x_mask, string.z_mask)
        new = self._terms.get(key, 0.0) + c.real
        if new == 0.0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = new

    # -- views ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        for (x, z), c in self._terms.items():
            yield c, PauliString(self.n_qubits, x, z)

    def coefficient(self, string: PauliString) -> float:
        return self._terms.get((string.x_mask, string.z_mask), 0.0)

    def items(self) -> list[tuple[tuple[int, int], float]]:
        return list(self._terms.items())

    # -- algebra ----------------------------------------------------------

    def scaled(self, factor: float) -> "PauliSum":
        out = PauliSum(self.n_qubits)
        if factor != 0.0:
            out._terms = {k: factor * c for k, c in self._terms.items()}
        return out

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch in PauliSum addition")
        out = PauliSum(self.n_qubits)
        out._terms = dict(self._terms)
        for key, c in other._terms.items():
            new = out._terms.get(key, 0.0) + c
            if new == 0.0:
                out._terms.pop(key, None)
            else:
                out._terms[key] = new
        return out

    def to_matrix(self) -> np.ndarray:
        d = 1 << self.n_qubits
        m = np.zeros((d, d), dtype=complex)
        cols = np.arange(d)
        for c, string in self:
            rows, amps = string.column_amplitudes(d)
            m[rows, cols] += c * amps
        return m

    def __repr__(self) -> str:
        return (f"PauliSum(n_qubits={self.n_qubits}, "
                f"terms={len(self._terms)})")
