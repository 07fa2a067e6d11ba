import math

import numpy as np
import pytest

from syklab.ensembles import sample_haar_state
from syklab.pauli import StateVector
from syklab.sre import (
    MPSState,
    SREEstimate,
    exact_sre,
    golden_product_state,
    golden_sre2,
    haar_sre2,
    mps_compress,
    pauli_expectation_squares,
    perfect_pauli_sample,
    sampled_sre2,
    sre_reference,
)

from helpers import ghz_state, random_clifford_state, random_state


class TestExactSRE:
    def test_basis_state_is_stabilizer(self):
        assert exact_sre(StateVector.basis_state(3, 0)).value == \
            pytest.approx(0.0, abs=1e-12)

    def test_ghz_and_graphlike_states_are_stabilizer(self):
        assert exact_sre(ghz_state(4)).value == pytest.approx(0.0, abs=1e-10)
        rng = np.random.default_rng(7)
        for _ in range(5):
            amps = random_clifford_state(4, 60, rng)
            assert exact_sre(amps).value == pytest.approx(0.0, abs=1e-9)

    def test_golden_product_value(self):
        for n in (1, 2, 4):
            est = exact_sre(golden_product_state(n))
            assert est.method == "exact"
            assert est.std_error == 0.0
            assert est.value == pytest.approx(n * math.log2(1.5), abs=1e-9)

    def test_purity_identity(self):
        # sum_P <P>^2 / d = Tr rho^2 = 1 for pure states
        rng = np.random.default_rng(1)
        amps = random_state(4, rng)
        squares = pauli_expectation_squares(amps)
        assert squares.sum() / 16 == pytest.approx(1.0, rel=1e-9)

    def test_haar_mean_tracks_reference(self):
        vals = [exact_sre(sample_haar_state(6, seed)).value
                for seed in range(24)]
        assert abs(np.mean(vals) - haar_sre2(6)) < 0.3

    def test_alpha_one_limit_continuous(self):
        rng = np.random.default_rng(4)
        amps = random_state(3, rng)
        m1 = exact_sre(amps, alpha=1.0).value
        m_near = exact_sre(amps, alpha=1.0 + 1e-6).value
        assert m1 == pytest.approx(m_near, abs=1e-4)

    def test_limit_enforced(self):
        with pytest.raises(ValueError, match="sampled"):
            exact_sre(np.zeros(2 ** 9), exact_limit=8)

    def test_clifford_invariance(self):
        # M_alpha is unchanged under Clifford rotations of the state
        rng = np.random.default_rng(11)
        amps = random_state(4, rng)
        base = exact_sre(amps).value
        from helpers import H, S, apply_cnot, apply_single

        rotated = amps.copy()
        for _ in range(30):
            kind = rng.integers(0, 3)
            if kind == 0:
                rotated = apply_single(rotated, H, int(rng.integers(1, 5)))
            elif kind == 1:
                rotated = apply_single(rotated, S, int(rng.integers(1, 5)))
            else:
                c, t = rng.choice(np.arange(1, 5), 2, replace=False)
                rotated = apply_cnot(rotated, int(c), int(t))
        assert exact_sre(rotated).value == pytest.approx(base, abs=1e-9)


class TestMPS:
    def test_product_state_bond_dimension_one(self):
        mps = mps_compress(StateVector.basis_state(4, 5), chi_max=8)
        assert mps.bond_dimensions == [1, 1, 1]
        assert mps.fidelity_estimate == pytest.approx(1.0)
        assert np.abs(np.abs(mps.to_statevector()[5]) - 1.0) < 1e-12

    def test_bell_pair_bond_two(self):
        bell = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        mps = mps_compress(bell, chi_max=4)
        assert mps.bond_dimensions == [2]
        assert np.allclose(mps.to_statevector(), bell, atol=1e-12)

    def test_random_state_reconstruction(self):
        rng = np.random.default_rng(3)
        amps = random_state(8, rng)
        mps = mps_compress(amps, chi_max=16, cutoff=1e-8)
        overlap = abs(np.vdot(mps.to_statevector(), amps)) ** 2
        assert overlap >= 1.0 - 1e-6
        assert mps.fidelity_estimate >= 1.0 - 1e-6
        assert max(mps.bond_dimensions) <= 16

    def test_truncation_reports_fidelity_loss(self):
        rng = np.random.default_rng(5)
        amps = random_state(8, rng)
        mps = mps_compress(amps, chi_max=4, cutoff=1e-8)
        overlap = abs(np.vdot(mps.to_statevector(), amps)) ** 2
        assert mps.fidelity_estimate < 1.0
        assert overlap == pytest.approx(mps.fidelity_estimate, abs=0.02)
        assert abs(mps.norm() - 1.0) < 1e-10

    def test_right_canonical_form(self):
        rng = np.random.default_rng(9)
        mps = mps_compress(random_state(6, rng), chi_max=8)
        for t in mps.tensors[1:]:
            chi_l = t.shape[0]
            mat = t.reshape(chi_l, -1)
            assert np.allclose(mat @ mat.conj().T, np.eye(chi_l), atol=1e-10)


class TestPerfectSampling:
    def test_stabilizer_support_only_z_strings(self):
        mps = mps_compress(StateVector.basis_state(4, 0), chi_max=2)
        batch = perfect_pauli_sample(mps, 400, seed=2)
        assert np.all(batch.x_masks == 0)
        assert np.allclose(np.abs(batch.expectations), 1.0)

    def test_same_seed_same_sequence(self):
        rng = np.random.default_rng(1)
        mps = mps_compress(random_state(5, rng), chi_max=8)
        a = perfect_pauli_sample(mps, 300, seed=9)
        b = perfect_pauli_sample(mps, 300, seed=9)
        assert np.array_equal(a.x_masks, b.x_masks)
        assert np.array_equal(a.z_masks, b.z_masks)
        c = perfect_pauli_sample(mps, 300, seed=10)
        assert not np.array_equal(a.x_masks, c.x_masks)

    def test_requires_canonical_form(self):
        mps = mps_compress(StateVector.basis_state(2, 0), chi_max=2)
        mps.canonical = "none"
        with pytest.raises(ValueError, match="canonical"):
            perfect_pauli_sample(mps, 10, seed=0)

    def test_rejects_unnormalized(self):
        mps = mps_compress(StateVector.basis_state(2, 0), chi_max=2)
        mps.tensors[0] = 2.0 * mps.tensors[0]
        with pytest.raises(ValueError, match="normalized"):
            perfect_pauli_sample(mps, 10, seed=0)

    def test_empirical_frequencies_match_exact_distribution(self):
        # 3 qubits: compare sampled string frequencies with Xi_P
        rng = np.random.default_rng(21)
        amps = random_state(3, rng)
        mps = mps_compress(amps, chi_max=8)
        n_samples = 100_000
        batch = perfect_pauli_sample(mps, n_samples, seed=5)
        squares = pauli_expectation_squares(amps)
        xi = squares / 8.0

        counts = np.zeros_like(xi)
        np.add.at(counts, (batch.x_masks, batch.z_masks), 1.0)
        freq = counts / n_samples
        # multinomial tolerance: 5 sigma per cell plus small floor
        sigma = np.sqrt(np.maximum(xi * (1 - xi), 1e-12) / n_samples)
        assert np.all(np.abs(freq - xi) < 5 * sigma + 2e-4)

    def test_sampled_expectations_match_exact_strings(self):
        rng = np.random.default_rng(2)
        amps = random_state(3, rng)
        mps = mps_compress(amps, chi_max=8)
        batch = perfect_pauli_sample(mps, 50, seed=3)
        from syklab.pauli import expectation

        for string, value in zip(batch.strings(), batch.expectations):
            assert expectation(string, amps) == pytest.approx(value, abs=1e-8)


class TestSampledSRE:
    def test_golden_state_within_three_sigma(self):
        mps = mps_compress(golden_product_state(4), chi_max=4)
        est = sampled_sre2(mps, 10_000, seed=7)
        target = golden_sre2(4)
        assert est.method == "sampled"
        assert abs(est.value - target) <= 3 * est.std_error

    def test_stabilizer_input_exact_zero(self):
        mps = mps_compress(ghz_state(4), chi_max=4)
        est = sampled_sre2(mps, 500, seed=1)
        assert est.value == 0.0
        assert est.std_error == 0.0

    def test_estimator_spread_scales_as_inverse_sqrt_samples(self):
        # empirical spread over independent chains follows n^(-1/2)
        rng = np.random.default_rng(6)
        mps = mps_compress(random_state(6, rng), chi_max=8)
        spreads = []
        for n in (200, 2_000, 20_000):
            vals = [sampled_sre2(mps, n, seed=100 * n + k).value
                    for k in range(30)]
            spreads.append(np.std(vals))
        assert spreads[0] > spreads[1] > spreads[2]
        assert spreads[0] / spreads[2] == pytest.approx(10.0, rel=0.5)

    def test_agreement_with_exact_on_random_state(self):
        rng = np.random.default_rng(12)
        amps = random_state(6, rng)
        exact = exact_sre(amps).value
        est = sampled_sre2(mps_compress(amps, chi_max=8), 20_000, seed=8)
        assert abs(est.value - exact) < max(4 * est.std_error, 0.05)


class TestReferences:
    def test_reference_values(self):
        assert sre_reference("haar", 10) == 8.0
        assert sre_reference("golden", 4) == pytest.approx(4 * math.log2(1.5))
        assert sre_reference("gs_fit", 10) == pytest.approx(-2.4 + 9.5)
        assert sre_reference("ms_fit", 10) == pytest.approx(-2.6 + 9.6)
        with pytest.raises(ValueError):
            sre_reference("bogus", 4)

    def test_estimate_validation(self):
        with pytest.raises(ValueError):
            SREEstimate(1.0, -0.1, 10, "sampled")
        with pytest.raises(ValueError):
            SREEstimate(1.0, 0.5, 10, "exact")
