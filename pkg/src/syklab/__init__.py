"""syklab: an exact-diagonalization laboratory for the interpolated
SYK-4 + SYK-2 model on Majorana fermions.

Builds disordered Hamiltonians as Pauli-string sums, diagonalizes them,
and evaluates entanglement entropies, entanglement-spectrum statistics,
KL-fidelity transition probes, capacity of entanglement, anti-flatness
and stabilizer Renyi entropy over reproducible disorder ensembles, with
the closed-form Haar / random-matrix / SYK-2 reference values attached.
"""

__version__ = "0.1.0"

from .pauli import PauliString, PauliSum, StateVector, expectation, multiply
from .syk import (
    CouplingTensor,
    DisorderSpec,
    SparseHamiltonian,
    assemble_sparse,
    build_hamiltonian_pair,
    build_interpolated,
    build_syk,
    jordan_wigner,
    majorana_product,
    sample_couplings,
)
from .spectra import (
    Spectrum,
    dos_histogram,
    entangling_ground_state,
    full_spectrum,
    ground_state,
    sector_full_spectrum,
    sector_ground_state,
    select_eigenstate,
    spectral_gap,
)
from .entanglement import (
    Bipartition,
    EntanglementSpectrum,
    capacity_of_entanglement,
    haar_reference,
    log_antiflatness,
    normalized_rdm_curve,
    partial_trace,
    relative_gap,
    renyi_entropy,
    sample_bipartitions,
    syk2_reference,
    von_neumann_entropy,
)
from .spacings import (
    HistogramPDF,
    average_ratio,
    ess_histogram,
    gap_ratios,
    kl_divergence,
    kl_fidelity_scan,
    reference_pdf,
    transition_point,
)
from .sre import (
    MPSState,
    SREEstimate,
    exact_sre,
    golden_product_state,
    mps_compress,
    perfect_pauli_sample,
    sampled_sre2,
    sre_reference,
)
from .fits import (
    FitResult,
    linear_fit,
    polynomial_peak,
    power_law_fit,
    saturating_exponential_fit,
)
from .ensembles import sample_haar_state, sample_rmt_spectrum
