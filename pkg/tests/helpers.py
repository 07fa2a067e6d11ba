"""Independent dense oracles shared across the test modules.

Everything here is built from explicit Kronecker products and dense linear
algebra so it cannot share a bug with the mask-based implementations it
checks.
"""

import numpy as np

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
LETTER = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense_pauli(letters: str) -> np.ndarray:
    """Kronecker build with qubit 1 = least-significant bit of the index."""
    m = np.eye(1, dtype=complex)
    for ch in letters:          # leftmost letter is qubit 1 -> kron from left
        m = np.kron(LETTER[ch], m)
    return m


def dense_rdm_spectrum(amps: np.ndarray, subsystem: tuple[int, ...]) -> np.ndarray:
    """Eigenvalues of the reduced density matrix via the explicit rho."""
    n = amps.size.bit_length() - 1
    keep = sorted(subsystem)
    rest = [q for q in range(1, n + 1) if q not in keep]
    d_a = 1 << len(keep)
    rho = np.zeros((d_a, d_a), dtype=complex)
    for a in range(d_a):
        for b in range(d_a):
            for r in range(1 << len(rest)):
                ia = _compose_index(keep, a, rest, r)
                ib = _compose_index(keep, b, rest, r)
                rho[a, b] += amps[ia] * np.conj(amps[ib])
    return np.sort(np.linalg.eigvalsh(rho))[::-1]


def _compose_index(keep, a_bits, rest, r_bits) -> int:
    idx = 0
    for pos, q in enumerate(keep):
        if (a_bits >> pos) & 1:
            idx |= 1 << (q - 1)
    for pos, q in enumerate(rest):
        if (r_bits >> pos) & 1:
            idx |= 1 << (q - 1)
    return idx


def apply_single(amps: np.ndarray, gate: np.ndarray, qubit: int) -> np.ndarray:
    """Apply a 2x2 gate to `qubit` (1-based, LSB) of a state vector."""
    n = amps.size.bit_length() - 1
    t = amps.reshape([2] * n)
    axis = n - qubit
    t = np.moveaxis(t, axis, 0)
    t = np.tensordot(gate, t, axes=([1], [0]))
    return np.moveaxis(t, 0, axis).reshape(-1)


def apply_cnot(amps: np.ndarray, control: int, target: int) -> np.ndarray:
    n = amps.size.bit_length() - 1
    out = amps.copy()
    idx = np.arange(1 << n)
    ctrl_on = (idx >> (control - 1)) & 1 == 1
    flipped = idx ^ (1 << (target - 1))
    out[idx[ctrl_on]] = amps[flipped[ctrl_on]]
    return out


def random_clifford_state(n_qubits: int, depth: int, rng) -> np.ndarray:
    """Random Clifford circuit (H, S, CNOT) applied to |0...0>."""
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[0] = 1.0
    for _ in range(depth):
        kind = rng.integers(0, 3)
        if kind == 0:
            amps = apply_single(amps, H, int(rng.integers(1, n_qubits + 1)))
        elif kind == 1:
            amps = apply_single(amps, S, int(rng.integers(1, n_qubits + 1)))
        elif n_qubits > 1:
            c, t = rng.choice(np.arange(1, n_qubits + 1), 2, replace=False)
            amps = apply_cnot(amps, int(c), int(t))
    return amps


def random_state(n_qubits: int, rng) -> np.ndarray:
    amps = rng.standard_normal(1 << n_qubits) + 1j * rng.standard_normal(1 << n_qubits)
    return amps / np.linalg.norm(amps)


def ghz_state(n_qubits: int) -> np.ndarray:
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return amps
