#!/usr/bin/env python3
"""The KL-fidelity probe: distance between averaged reduced-density-matrix
spectra at neighboring interpolation values, and the polynomial peak fit
that locates the transition.
"""

import numpy as np

import syklab as sl
from syklab.spacings import kl_fidelity_scan, rescaled_fidelity, transition_point
from syklab.spectra import entangling_ground_state

N, M = 14, 80
n = N // 2
R = n // 2
bip = sl.Bipartition(n, tuple(range(1, R + 1)))
grid = np.round(np.arange(0.0, 0.61, 0.01), 10)

print(f"N={N}, M={M}: collecting GS RDM spectra over g in [0, 0.6] ...")
acc = np.zeros((grid.size, 1 << R))
for m in range(M):
    h4, h2 = sl.build_hamiltonian_pair(N, seed=m)
    a4 = sl.assemble_sparse(h4).toarray()
    a2 = sl.assemble_sparse(h2).toarray()
    for i, g in enumerate(grid):
        _, vec = entangling_ground_state((1 - g) * a4 + g * a2)
        acc[i] += sl.partial_trace(vec, bip).eigenvalues
acc /= M

curves = {float(g): acc[i] for i, g in enumerate(grid)}
scan = kl_fidelity_scan(curves, epsilon=0.01)

print("\nrescaled KL fidelity (every 4th point):")
for g, v in rescaled_fidelity(scan)[::4]:
    bar = "#" * int(round(40 * v))
    print(f"  g={g:4.2f} {bar}")

est = transition_point(scan)
print(f"\ndegree-10 polynomial peak: g_c = {est.g_c:.3f}"
      f"{' (boundary: unreliable)' if est.boundary else ''}")
print("""
Note the spike in the very first bin: at g = 0 the SYK-4 ground level is
an exact doublet and the state is a mixed doublet member, while for any
g > 0 it is a single parity-pure vector, so the first step restructures
the RDM sharply.  The broad interior bump is the physical crossover of
the ground-state entanglement structure.  Larger epsilon rescales the
curve but not its shape (try epsilon=0.02 or 0.05 above).
""")
