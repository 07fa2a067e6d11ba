"""SYK-q Hamiltonians on Majorana fermions, mapped to qubits.

N Majorana modes live on n = N/2 qubits via the Jordan-Wigner strings

    chi_{2k-1} = Z_1 ... Z_{k-1} X_k,     chi_{2k} = Z_1 ... Z_{k-1} Y_k,

normalized so that chi_i^2 = 1 (every chi_i is a unit-norm Hermitian Pauli
string).  The q-body Hamiltonian is

    H = i^(q/2) * sum_{i1<...<iq} J_{i1..iq} chi_{i1} ... chi_{iq}

with i.i.d. Gaussian couplings of mean zero and variance (q-1)! J / N^(q-1).
The i^(q/2) prefactor combines with the Pauli product phases to give real
coefficients; any imaginary residue aborts construction, since it would
signal a convention bug.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np
import scipy.sparse as sp

from .pauli import PauliString, PauliSum


class MemoryBudgetError(MemoryError):
    """Sparse assembly would exceed the configured memory budget."""

    def __init__(self, required_bytes: int, budget_bytes: int):
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes
        super().__init__(
            f"assembly needs ~{required_bytes} bytes, budget is {budget_bytes}")


@dataclass(frozen=True)
class DisorderSpec:
    """Ensemble parameters for one SYK-q disorder draw."""

    n_majorana: int
    q: int
    coupling_scale: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n_majorana % 2 or self.n_majorana <= 0:
            raise ValueError("n_majorana must be a positive even integer")
        if self.q not in (2, 4):
            raise ValueError(f"q={self.q} unsupported; only q=2 and q=4")
        if self.n_majorana < self.q:
            raise ValueError("need at least q Majorana modes")
        if self.coupling_scale <= 0:
            raise ValueError("coupling scale must be positive")

    @property
    def n_qubits(self) -> int:
        return self.n_majorana // 2

    @property
    def variance(self) -> float:
        """Target coupling variance (q-1)! J / N^(q-1)."""
        return (math.factorial(self.q - 1) * self.coupling_scale
                / self.n_majorana ** (self.q - 1))


class CouplingTensor:
    """Gaussian couplings J_{i1..iq}, one per strictly increasing index tuple.

    Entries are stored in lexicographic tuple order, so the tensor is a
    pure function of (seed, q, N) regardless of how callers iterate it.
    """

    def __init__(self, spec: DisorderSpec, values: np.ndarray):
        expected = math.comb(spec.n_majorana, spec.q)
        if values.shape != (expected,):
            raise ValueError(
                f"expected {expected} couplings, got {values.shape}")
        self.spec = spec
        self.values = np.asarray(values, dtype=float)

    def tuples(self) -> Iterator[tuple[int, ...]]:
        return combinations(range(1, self.spec.n_majorana + 1), self.spec.q)

    def items(self) -> Iterator[tuple[tuple[int, ...], float]]:
        return zip(self.tuples(), self.values)

    def __len__(self) -> int:
        return self.values.size

    def coupling(self, indices: tuple[int, ...]) -> float:
        return self.values[_tuple_rank(indices, self.spec.n_majorana)]


def _tuple_rank(indices: tuple[int, ...], n: int) -> int:
    """Lexicographic rank of a strictly increasing 1-based index tuple."""
    if list(indices) != sorted(set(indices)):
        raise ValueError("indices must be strictly increasing")
    q = len(indices)
    rank = 0
    prev = 0
    for pos, idx in enumerate(indices):
        for skipped in range(prev + 1, idx):
            rank += math.comb(n - skipped, q - pos - 1)
        prev = idx
    return rank


def jordan_wigner(majorana_index: int, n_majorana: int) -> PauliString:
    """Majorana operator chi_i as a Pauli string on n_majorana/2 qubits."""
    if n_majorana % 2:
        raise ValueError("n_majorana must be even")
    if not 1 <= majorana_index <= n_majorana:
        raise ValueError(
            f"majorana index {majorana_index} out of range 1..{n_majorana}")
    k = (majorana_index + 1) // 2          # site qubit, 1-based
    head = 1 << (k - 1)
    z = head - 1                           # Z tail on qubits 1..k-1
    if majorana_index % 2 == 0:            # even index carries Y at the head
        z |= head
    return PauliString(n_majorana // 2, head, z)


def majorana_product(indices: tuple[int, ...], n_majorana: int) -> PauliString:
    """Ordered product chi_{i1} chi_{i2} ... as a single Pauli string."""
    out = None
    for i in indices:
        chi = jordan_wigner(i, n_majorana)
        out = chi if out is None else out * chi
    if out is None:
        return PauliString.identity(n_majorana // 2)
    return out


def sample_couplings(spec: DisorderSpec) -> CouplingTensor:
    """Draw the full coupling tensor; deterministic for a fixed spec.

    A counter-based Philox stream keyed by (seed, q, N) supplies the values
    in lexicographic tuple order, so results do not depend on iteration
    order or thread count.
    """
    key = np.array([np.uint64(spec.seed % (1 << 64)),
                    np.uint64((spec.q << 32) | spec.n_majorana)],
                   dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    count = math.comb(spec.n_majorana, spec.q)
    values = gen.standard_normal(count) * math.sqrt(spec.variance)
    return CouplingTensor(spec, values)


def build_syk(couplings: CouplingTensor) -> PauliSum:
    """Assemble H^{SYK-q} as a Hermitian PauliSum with real coefficients."""
    spec = couplings.spec
    prefactor = 1j ** (spec.q // 2)
    h = PauliSum(spec.n_qubits)
    for indices, J in couplings.items():
        string = majorana_product(indices, spec.n_majorana)
        h.add_term(prefactor * J, string)
    return h


def build_interpolated(h4: PauliSum, h2: PauliSum, g: float) -> PauliSum:
    """(1-g) * H4 + g * H2 with duplicate strings merged."""
    if not 0.0 <= g <= 1.0:
        raise ValueError(f"interpolation parameter g={g} outside [0, 1]")
    if h4.n_qubits != h2.n_qubits:
        raise ValueError("qubit count mismatch between the two terms")
    return h4.scaled(1.0 - g) + h2.scaled(g)


@dataclass(frozen=True)
class SparseHamiltonian:
    """Assembled sparse Hermitian matrix of dimension 2^(N/2)."""

    dim: int
    matrix: sp.csr_matrix

    def __post_init__(self):
        if self.matrix.shape != (self.dim, self.dim):
            raise ValueError("matrix shape does not match dim")

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def interpolate(self, other: "SparseHamiltonian", g: float) -> "SparseHamiltonian":
        """(1-g)*self + g*other on the assembled matrices."""
        if not 0.0 <= g <= 1.0:
            raise ValueError(f"interpolation parameter g={g} outside [0, 1]")
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return SparseHamiltonian(self.dim,
                                 ((1.0 - g) * self.matrix + g * other.matrix).tocsr())


def estimate_assembly_bytes(h: PauliSum) -> int:
    """Upper estimate of the CSR memory footprint before assembling."""
    dim = 1 << h.n_qubits
    distinct_x = len({x for (x, _z), _c in h.items()})
    nnz = max(distinct_x, 1) * dim
    # complex128 data + int32 indices + indptr, plus COO scratch of same order
    return nnz * (16 + 4) * 2 + (dim + 1) * 8


def assemble_sparse(h: PauliSum, memory_budget_bytes: int | None = None) -> SparseHamiltonian:
    """Assemble the 2^n x 2^n sparse Hermitian matrix of a PauliSum.

    Terms sharing an x_mask contribute to the same set of matrix positions
    (row = column XOR x_mask), so they are accumulated per group; each
    Pauli term touches every column exactly once.
    """
    if memory_budget_bytes is not None:
        need = estimate_assembly_bytes(h)
        if need > memory_budget_bytes:
            raise MemoryBudgetError(need, memory_budget_bytes)
    n = h.n_qubits
    dim = 1 << n
    cols = np.arange(dim, dtype=np.int64)
    groups: dict[int, list[tuple[int, float]]] = {}
    for (x, z), c in h.items():
        groups.setdefault(x, []).append((z, c))

    row_blocks, col_blocks, data_blocks = [], [], []
    for x, zs in groups.items():
        amp = np.zeros(dim, dtype=complex)
        for z, c in zs:
            phase = 1j ** ((x & z).bit_count() % 4)
            signs = 1.0 - 2.0 * (np.bitwise_count(cols & np.int64(z)) & 1)
            amp += (c * phase) * signs
        row_blocks.append(cols ^ x)
        col_blocks.append(cols)
        data_blocks.append(amp)

    if not row_blocks:
        mat = sp.csr_matrix((dim, dim), dtype=complex)
        return SparseHamiltonian(dim, mat)
    mat = sp.coo_matrix(
        (np.concatenate(data_blocks),
         (np.concatenate(row_blocks), np.concatenate(col_blocks))),
        shape=(dim, dim)).tocsr()
    return SparseHamiltonian(dim, mat)


def build_hamiltonian_pair(n_majorana: int, seed: int,
                           coupling_scale: float = 1.0) -> tuple[PauliSum, PauliSum]:
    """Sample one disorder realization and build (H4, H2).

    The two bodies of couplings are drawn from independent streams keyed by
    (seed, q, N); a g-sweep reuses the same pair.
    """
    h4 = build_syk(sample_couplings(
        DisorderSpec(n_majorana, 4, coupling_scale, seed)))
    h2 = build_syk(sample_couplings(
        DisorderSpec(n_majorana, 2, coupling_scale, seed)))
    return h4, h2


# -- binary export ------------------------------------------------------
#
# Little-endian layout of a Hamiltonian dump:
#   magic   4 bytes  b"SYKH"
#   version u16      currently 1
#   seed    i64
#   N       u32      Majorana count
#   q       u32      2 or 4; 0 marks an interpolated matrix
#   g       f64      interpolation parameter (0.0 for a pure SYK-q dump)
#   dim     u64
#   nnz     u64
# followed by nnz triplets: row u32, col u32, re f64, im f64.

_DUMP_MAGIC = b"SYKH"
_DUMP_HEADER = struct.Struct("<4sHqIIdQQ")
_DUMP_ENTRY_DTYPE = np.dtype([("row", "<u4"), ("col", "<u4"),
                              ("re", "<f8"), ("im", "<f8")])


def write_hamiltonian_dump(path, ham: SparseHamiltonian, *, seed: int,
                           n_majorana: int, q: int, g: float = 0.0) -> None:
    coo = ham.matrix.tocoo()
    entries = np.empty(coo.nnz, dtype=_DUMP_ENTRY_DTYPE)
    entries["row"] = coo.row
    entries["col"] = coo.col
    entries["re"] = coo.data.real
    entries["im"] = coo.data.imag
    with open(path, "wb") as fh:
        fh.write(_DUMP_HEADER.pack(_DUMP_MAGIC, 1, seed, n_majorana, q, g,
                                   ham.dim, coo.nnz))
        entries.tofile(fh)


def read_hamiltonian_dump(path) -> tuple[dict, SparseHamiltonian]:
    with open(path, "rb") as fh:
        header = fh.read(_DUMP_HEADER.size)
        magic, version, seed, n_majorana, q, g, dim, nnz = _DUMP_HEADER.unpack(header)
        if magic != _DUMP_MAGIC:
            raise ValueError(f"{path}: not a Hamiltonian dump")
        if version != 1:
            raise ValueError(f"{path}: unsupported dump version {version}")
        entries = np.fromfile(fh, dtype=_DUMP_ENTRY_DTYPE, count=nnz)
    data = entries["re"] + 1j * entries["im"]
    mat = sp.coo_matrix((data, (entries["row"], entries["col"])),
                        shape=(dim, dim)).tocsr()
    meta = {"seed": seed, "n_majorana": n_majorana, "q": q, "g": g}
    return meta, SparseHamiltonian(int(dim), mat)
