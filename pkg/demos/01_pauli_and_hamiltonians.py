#!/usr/bin/env python3
"""Building blocks: Pauli strings, Jordan-Wigner Majoranas, and the
interpolated SYK-4 + SYK-2 Hamiltonian.

Walks from single operators to an assembled sparse matrix and its
spectrum, printing everything small enough to look at.
"""

import numpy as np

import syklab as sl

# --- Pauli strings in symplectic form -------------------------------------
x1 = sl.PauliString.single(2, 1, "X")
z1 = sl.PauliString.single(2, 1, "Z")
print("X1       =", x1)
print("Z1       =", z1)
print("X1 * Z1  =", x1 * z1, " (the -i Y1 one expects)")
print("X1 * X1  =", x1 * x1, " (involution)")

# --- Jordan-Wigner Majoranas ----------------------------------------------
print("\nMajorana strings for N = 8 fermions on 4 qubits:")
for i in (1, 2, 3, 4, 7, 8):
    print(f"  chi_{i} = {sl.jordan_wigner(i, 8)}")

chi1, chi2 = sl.jordan_wigner(1, 8), sl.jordan_wigner(2, 8)
ab, ba = chi1 * chi2, chi2 * chi1
print("chi_1 chi_2 vs chi_2 chi_1 phases:", ab.phase_exp, ba.phase_exp,
      "(differ by i^2: they anticommute)")

# --- disorder draw and Hamiltonian assembly --------------------------------
N = 12
h4, h2 = sl.build_hamiltonian_pair(N, seed=7)
print(f"\nN={N}: H4 has {len(h4)} Pauli terms, H2 has {len(h2)}")

ham4 = sl.assemble_sparse(h4)
ham2 = sl.assemble_sparse(h2)
print(f"sparse dims {ham4.dim} x {ham4.dim}; nnz(H4) = {ham4.matrix.nnz}")

mixed = sl.build_interpolated(h4, h2, g=0.3)
ham_g = sl.assemble_sparse(mixed)
dense = ham_g.toarray()
print("hermitian check:", np.abs(dense - dense.conj().T).max())

# --- spectra ---------------------------------------------------------------
s4 = sl.full_spectrum(ham4, want_vectors=False)
print(f"\nSYK-4 spectrum: E0 = {s4.eigenvalues[0]:+.4f}, "
      f"E_max = {s4.eigenvalues[-1]:+.4f}")
pair_split = np.abs(s4.eigenvalues[0::2] - s4.eigenvalues[1::2]).max()
print(f"max level-pair split = {pair_split:.2e} "
      "(N mod 8 = 4: exact two-fold degeneracy)")

print("spectral gap (degenerate pairs collapsed):",
      round(sl.spectral_gap(s4), 5))

energy, gs = sl.ground_state(ham_g)
print(f"\nH(g=0.3) ground energy {energy:+.5f}; "
      f"residual {np.linalg.norm(ham_g.matrix @ gs - energy * gs):.2e}")
