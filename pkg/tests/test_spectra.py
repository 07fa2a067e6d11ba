import numpy as np
import pytest
import scipy.sparse as sp

from syklab.spectra import (
    Spectrum,
    collapse_degenerate,
    dos_histogram,
    full_spectrum,
    ground_state,
    parity_sector_indices,
    residual_norms,
    sector_eigenvalues,
    sector_full_spectrum,
    sector_ground_state,
    select_eigenstate,
    spectral_gap,
    spectrum_to_csv,
    strip_paired,
)
from syklab.syk import assemble_sparse, build_hamiltonian_pair, build_interpolated


def test_trivial_diagonal_spectrum():
    s = full_spectrum(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(s.eigenvalues, [1, 2, 3])


def test_single_z_term():
    s = full_spectrum(np.array([[-1.0, 0.0], [0.0, 1.0]]))
    assert np.allclose(s.eigenvalues, [-1, 1])


def test_spectrum_requires_ascending():
    with pytest.raises(ValueError):
        Spectrum(np.array([2.0, 1.0]))


def test_dense_limit_points_to_iterative_path():
    with pytest.raises(ValueError, match="iterative"):
        full_spectrum(np.eye(4), dense_limit=2)


def test_syk4_matches_high_precision_oracle():
    # independent high-precision eigensolver (mpmath) on one N=8 draw
    mp = pytest.importorskip("mpmath")
    h4, _ = build_hamiltonian_pair(8, seed=17)
    dense = assemble_sparse(h4).toarray()
    s = full_spectrum(dense, want_vectors=False)
    mp.mp.dps = 40
    e, _ = mp.eig(mp.matrix(dense))
    ref = np.sort([float(mp.re(x)) for x in e])
    assert np.abs(s.eigenvalues - ref).max() < 1e-9


def test_eigenvector_residuals_small():
    h4, h2 = build_hamiltonian_pair(10, seed=4)
    ham = assemble_sparse(build_interpolated(h4, h2, 0.3))
    s = full_spectrum(ham)
    norm = np.linalg.norm(ham.toarray(), 2)
    assert residual_norms(ham, s).max() <= 1e-8 * max(norm, 1.0)


def test_trace_identity():
    h4, _ = build_hamiltonian_pair(10, seed=8)
    ham = assemble_sparse(h4)
    s = full_spectrum(ham, want_vectors=False)
    tr = np.trace(ham.toarray()).real
    scale = max(1.0, np.abs(s.eigenvalues).sum())
    assert abs(s.eigenvalues.sum() - tr) / scale < 1e-8


class TestSelectEigenstate:
    def test_middle_picks_closest_to_zero(self):
        vec = np.eye(4)
        s = Spectrum(np.array([-2.0, -1.0, 0.5, 3.0]), vec.astype(complex))
        ms = select_eigenstate(s, "middle")
        assert np.allclose(np.abs(ms.amplitudes), vec[:, 2])

    def test_ground_of_minus_z(self):
        s = full_spectrum(np.array([[-1.0, 0], [0, 1.0]]) * -1.0)
        gs = select_eigenstate(s, "ground")
        assert np.allclose(np.abs(gs.amplitudes), [0, 1])

    def test_degenerate_middle_tie_breaks_low_index(self):
        s = Spectrum(np.array([-0.1, 0.1]), np.eye(2).astype(complex))
        ms = select_eigenstate(s, "middle")
        assert np.allclose(np.abs(ms.amplitudes), [1, 0])

    def test_needs_vectors(self):
        s = Spectrum(np.array([0.0, 1.0]))
        with pytest.raises(ValueError, match="eigenvector"):
            select_eigenstate(s, "ground")

    def test_unknown_kind(self):
        s = Spectrum(np.array([0.0, 1.0]), np.eye(2).astype(complex))
        with pytest.raises(ValueError, match="kind"):
            select_eigenstate(s, "edge")


class TestGap:
    def test_degenerate_pairs_collapse(self):
        assert spectral_gap(np.array([-1.0, -1.0, 1.0, 1.0])) == pytest.approx(2.0)

    def test_plain_two_level(self):
        assert spectral_gap(np.array([0.0, 5.0])) == pytest.approx(5.0)

    def test_too_few_levels(self):
        with pytest.raises(ValueError):
            spectral_gap(np.array([1.0]))
        with pytest.raises(ValueError):
            spectral_gap(np.array([1.0, 1.0]))

    def test_collapse_tolerance(self):
        levels = collapse_degenerate([0.0, 1e-12, 1.0, 1.0 + 5e-10, 2.0])
        assert np.allclose(levels, [0.0, 1.0, 2.0])


def test_syk2_gap_scaling_consistent_with_inverse_n():
    from syklab.fits import power_law_fit
    from syklab.syk import DisorderSpec, build_syk, sample_couplings

    means = {}
    for n_major in (8, 10, 12, 14):
        gaps = []
        for m in range(120):
            h2 = build_syk(sample_couplings(DisorderSpec(n_major, 2, 1.0,
                                                         seed=900 + m)))
            ev = np.linalg.eigvalsh(assemble_sparse(h2).toarray())
            gaps.append(spectral_gap(ev))
        means[n_major] = np.mean(gaps)
    fit = power_law_fit(list(means), list(means.values()))
    assert abs(fit.parameters["p"] + 1.0) < 0.2


class TestDegeneracyStripping:
    def test_strip_paired(self):
        assert np.allclose(strip_paired([-1.0, -1.0, 1.0, 1.0]), [-1.0, 1.0])

    def test_dos_histogram_normalized(self):
        spectra = [np.array([-1.0, -1.0, 1.0, 1.0]),
                   np.array([-2.0, -2.0, 2.0, 2.0])]
        hist = dos_histogram(spectra, bins=8)
        assert hist.n_samples == 4
        assert np.isclose((hist.densities * hist.widths).sum(), 1.0)

    def test_dos_empty_input(self):
        with pytest.raises(ValueError):
            dos_histogram([], bins=4)


class TestParitySectors:
    def test_sector_sizes(self):
        even, odd = parity_sector_indices(4)
        assert even.size == odd.size == 8
        assert set(even) | set(odd) == set(range(16))

    def test_hamiltonian_is_block_diagonal(self):
        h4, h2 = build_hamiltonian_pair(10, seed=2)
        ham = assemble_sparse(build_interpolated(h4, h2, 0.4))
        dense = ham.toarray()
        even, odd = parity_sector_indices(5)
        assert np.abs(dense[np.ix_(even, odd)]).max() == 0.0

    def test_sector_spectrum_matches_full(self):
        h4, _ = build_hamiltonian_pair(10, seed=13)
        ham = assemble_sparse(h4)
        full = full_spectrum(ham, want_vectors=False)
        ev_e, ev_o = sector_eigenvalues(ham)
        merged = np.sort(np.concatenate([ev_e, ev_o]))
        assert np.allclose(full.eigenvalues, merged, atol=1e-10)
        s = sector_full_spectrum(ham)
        assert np.allclose(s.eigenvalues, full.eigenvalues, atol=1e-10)
        assert residual_norms(ham, s).max() < 1e-8

    def test_sector_ground_state_is_global_minimum(self):
        h4, h2 = build_hamiltonian_pair(8, seed=31)
        ham = assemble_sparse(build_interpolated(h4, h2, 0.2))
        energy, vec = sector_ground_state(ham)
        s = full_spectrum(ham, want_vectors=False)
        assert energy == pytest.approx(s.eigenvalues[0], abs=1e-10)
        resid = np.linalg.norm(ham.matrix @ vec - energy * vec)
        assert resid < 1e-8


def test_iterative_agrees_with_dense_on_ground_energy():
    h4, _ = build_hamiltonian_pair(12, seed=6)
    ham = assemble_sparse(h4)
    e_dense = full_spectrum(ham, want_vectors=False).eigenvalues[0]
    e_iter, vec = ground_state(sp.csr_matrix(ham.matrix), dense_limit=16)
    assert abs(e_iter - e_dense) < 1e-7
    assert np.linalg.norm(ham.matrix @ vec - e_iter * vec) < 1e-6


def test_dos_support_shrinks_then_spreads():
    # fixed seeds at N=18: pooled support dips near g=0.05 relative to both
    # g=0 (SYK-4 point) and g=0.3 (disorder scatter already growing)
    widths = {}
    pairs = [build_hamiltonian_pair(18, seed=1000 + m) for m in range(15)]
    mats = [(assemble_sparse(h4).toarray(), assemble_sparse(h2).toarray())
            for h4, h2 in pairs]
    for g in (0.0, 0.05, 0.3):
        lo, hi = [], []
        for a4, a2 in mats:
            ev = np.linalg.eigvalsh((1 - g) * a4 + g * a2)
            lo.append(ev[0])
            hi.append(ev[-1])
        widths[g] = max(hi) - min(lo)
    assert widths[0.05] < widths[0.0]
    assert widths[0.05] < widths[0.3]


def test_spectrum_csv_export(tmp_path):
    s = Spectrum(np.array([-1.0, 1.0]), meta={"seed": 3, "N": 4, "g": 0.5})
    path = tmp_path / "spec.csv"
    spectrum_to_csv(path, [s])
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "seed,N,g,index,eigenvalue"
    assert lines[1].startswith("3,4,0.5,0,")
    assert len(lines) == 3
