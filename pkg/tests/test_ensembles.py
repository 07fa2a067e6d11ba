import numpy as np
import pytest

from syklab.ensembles import sample_haar_state, sample_rmt_spectrum
from syklab.entanglement import (
    Bipartition,
    marchenko_pastur_spectrum,
    partial_trace,
)
from syklab.spacings import (
    RBAR_GOE,
    RBAR_GSE,
    RBAR_GUE,
    RBAR_POISSON,
    average_ratio,
    ess_histogram,
    gap_ratios,
    kl_divergence,
    reference_bin_masses,
)


class TestHaarStates:
    def test_normalized_and_deterministic(self):
        a = sample_haar_state(6, seed=3)
        b = sample_haar_state(6, seed=3)
        c = sample_haar_state(6, seed=4)
        assert np.linalg.norm(a.amplitudes) == pytest.approx(1.0, abs=1e-12)
        assert np.array_equal(a.amplitudes, b.amplitudes)
        assert not np.array_equal(a.amplitudes, c.amplitudes)

    def test_mp_agreement_improves_with_size(self):
        # KL of the averaged half-chain spectrum against the MP quantiles
        # decreases with qubit count (even sizes)
        kls = []
        for n in (6, 8, 10):
            r = n // 2
            lam = np.zeros(1 << r)
            count = 40
            for seed in range(count):
                psi = sample_haar_state(n, seed)
                lam += partial_trace(
                    psi, Bipartition(n, tuple(range(1, r + 1)))).eigenvalues
            lam /= count
            lam /= lam.sum()
            kls.append(kl_divergence(lam, marchenko_pastur_spectrum(lam.size)))
        assert kls[0] > kls[1] > kls[2]

    def test_ess_matches_gue(self):
        # Haar-state entanglement spectra follow the GUE surmise
        ratios = []
        for seed in range(150):
            psi = sample_haar_state(11, seed)
            spec = partial_trace(psi, Bipartition(11, (1, 2, 3, 4, 5)))
            ratios.extend(gap_ratios(np.sort(spec.eigenvalues)))
        hist = ess_histogram(ratios, bins=60)
        kl = {kind: kl_divergence(hist,
                                  reference_bin_masses(kind, hist.bin_edges))
              for kind in ("wd_gue", "wd_goe", "poisson")}
        assert kl["wd_gue"] < kl["wd_goe"]
        assert kl["wd_gue"] < kl["poisson"]


class TestRMTSpectra:
    def test_shapes_and_determinism(self):
        for kind in ("goe", "gue", "gse", "poisson_levels"):
            ev = sample_rmt_spectrum(kind, 64, seed=5)
            assert ev.shape == (64,)
            assert np.all(np.diff(ev) >= 0)
            again = sample_rmt_spectrum(kind, 64, seed=5)
            assert np.array_equal(ev, again)

    def test_unknown_kind_and_min_dim(self):
        with pytest.raises(ValueError):
            sample_rmt_spectrum("bogus", 16, 0)
        with pytest.raises(ValueError):
            sample_rmt_spectrum("goe", 2, 0)

    def test_gse_kramers_degeneracy(self):
        ev = sample_rmt_spectrum("gse", 128, seed=9)
        assert np.abs(ev[0::2] - ev[1::2]).max() < 1e-10

    def test_goe_rbar_quick(self):
        spectra = [sample_rmt_spectrum("goe", 256, seed) for seed in range(40)]
        assert average_ratio(spectra) == pytest.approx(RBAR_GOE, abs=0.015)

    def test_gue_rbar_quick(self):
        spectra = [sample_rmt_spectrum("gue", 256, seed) for seed in range(40)]
        assert average_ratio(spectra) == pytest.approx(RBAR_GUE, abs=0.015)

    def test_gse_rbar_quick_after_stripping(self):
        spectra = [sample_rmt_spectrum("gse", 256, seed)[::2]
                   for seed in range(60)]
        assert average_ratio(spectra) == pytest.approx(RBAR_GSE, abs=0.015)

    def test_poisson_rbar_quick(self):
        spectra = [sample_rmt_spectrum("poisson_levels", 512, seed)
                   for seed in range(60)]
        assert average_ratio(spectra) == pytest.approx(RBAR_POISSON, abs=0.01)


def test_haar_sre_tracks_unit_slope():
    from syklab.sre import exact_sre, haar_sre2

    means = {}
    for n in (4, 6, 8):
        count = 20 if n < 8 else 8
        vals = [exact_sre(sample_haar_state(n, 50 + s)).value
                for s in range(count)]
        means[n] = np.mean(vals)
        assert abs(means[n] - haar_sre2(n)) < 0.3
    slope = (means[8] - means[4]) / 4
    assert slope == pytest.approx(1.0, abs=0.1)


def test_haar_antiflatness_approaches_log_five_quarters():
    from syklab.entanglement import log_antiflatness

    vals = []
    for seed in range(150):
        psi = sample_haar_state(10, seed)
        spec = partial_trace(psi, Bipartition(10, tuple(range(1, 6))))
        vals.append(log_antiflatness(spec))
    assert np.mean(vals) == pytest.approx(np.log(5 / 4), abs=0.02)
