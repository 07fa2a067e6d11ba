import math

import numpy as np
import pytest

from syklab.pauli import PauliString, PauliSum
from syklab.syk import (
    CouplingTensor,
    DisorderSpec,
    MemoryBudgetError,
    assemble_sparse,
    build_hamiltonian_pair,
    build_interpolated,
    build_syk,
    estimate_assembly_bytes,
    jordan_wigner,
    majorana_product,
    read_hamiltonian_dump,
    sample_couplings,
    write_hamiltonian_dump,
    _tuple_rank,
)

from helpers import dense_pauli


class TestJordanWigner:
    def test_convention_forced_examples(self):
        assert str(jordan_wigner(1, 4)) == "+1 XI"
        assert str(jordan_wigner(2, 4)) == "+1 YI"
        assert str(jordan_wigner(3, 4)) == "+1 ZX"
        assert str(jordan_wigner(4, 4)) == "+1 ZY"

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            jordan_wigner(0, 4)
        with pytest.raises(ValueError):
            jordan_wigner(5, 4)
        with pytest.raises(ValueError):
            jordan_wigner(1, 3)

    @pytest.mark.parametrize("n_major", [4, 8, 12])
    def test_involution_and_anticommutation(self, n_major):
        chis = [jordan_wigner(i, n_major) for i in range(1, n_major + 1)]
        for i, ci in enumerate(chis):
            assert (ci * ci).is_identity
            assert ci.is_hermitian
            for cj in chis[i + 1:]:
                ab, ba = ci * cj, cj * ci
                assert (ab.x_mask, ab.z_mask) == (ba.x_mask, ba.z_mask)
                # anticommute: phases differ by i^2
                assert (ab.phase_exp - ba.phase_exp) % 4 == 2


class TestCouplings:
    def test_entry_count_and_rank(self):
        spec = DisorderSpec(8, 4, 1.0, seed=1)
        t = sample_couplings(spec)
        assert len(t) == math.comb(8, 4)
        for rank, (tup, value) in enumerate(t.items()):
            assert _tuple_rank(tup, 8) == rank
            assert t.coupling(tup) == value

    def test_target_variances(self):
        assert DisorderSpec(8, 4).variance == pytest.approx(6 / 512)
        assert DisorderSpec(8, 2).variance == pytest.approx(0.125)

    def test_sample_variance_matches_target(self):
        # ~1.4e5 draws at (4, 8): 3-sigma band around (q-1)! J / N^(q-1)
        spec = DisorderSpec(8, 4, 1.0, seed=0)
        draws = np.concatenate(
            [sample_couplings(DisorderSpec(8, 4, 1.0, seed=s)).values
             for s in range(2000)])
        var = draws.var()
        target = spec.variance
        sigma = target * math.sqrt(2.0 / draws.size)
        assert abs(var - target) < 3 * sigma
        assert abs(draws.mean()) < 3 * math.sqrt(target / draws.size)

    def test_deterministic_per_seed(self):
        a = sample_couplings(DisorderSpec(10, 4, 1.0, seed=42))
        b = sample_couplings(DisorderSpec(10, 4, 1.0, seed=42))
        c = sample_couplings(DisorderSpec(10, 4, 1.0, seed=43))
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            DisorderSpec(7, 4)
        with pytest.raises(ValueError):
            DisorderSpec(8, 3)
        with pytest.raises(ValueError):
            DisorderSpec(2, 4)

    def test_wrong_entry_count_rejected(self):
        spec = DisorderSpec(8, 2)
        with pytest.raises(ValueError):
            CouplingTensor(spec, np.zeros(5))


def _single_coupling_tensor(n_major, q, tup, value=1.0):
    spec = DisorderSpec(n_major, q)
    values = np.zeros(math.comb(n_major, q))
    values[_tuple_rank(tup, n_major)] = value
    return CouplingTensor(spec, values)


class TestBuildSyk:
    def test_q2_single_term_is_minus_z1(self):
        # i chi_1 chi_2 = i X1 Y1 = -Z1
        h = build_syk(_single_coupling_tensor(4, 2, (1, 2)))
        dense = assemble_sparse(h).toarray()
        evals = np.linalg.eigvalsh(dense)
        assert np.allclose(dense, -dense_pauli("ZI"), atol=1e-12)
        assert np.allclose(evals, [-1, -1, 1, 1], atol=1e-12)

    def test_q4_single_term_eigenvalues(self):
        # -chi1 chi2 chi3 chi4 = Z1 Z2: eigenvalues +-1, twice each
        h = build_syk(_single_coupling_tensor(4, 4, (1, 2, 3, 4)))
        evals = np.linalg.eigvalsh(assemble_sparse(h).toarray())
        assert np.allclose(np.sort(evals), [-1, -1, 1, 1], atol=1e-12)

    def test_zero_couplings_give_empty_sum(self):
        spec = DisorderSpec(6, 2)
        t = CouplingTensor(spec, np.zeros(math.comb(6, 2)))
        h = build_syk(t)
        assert len(h) == 0
        assert not assemble_sparse(h).matrix.nnz

    def test_all_coefficients_real_and_hermitian(self):
        for q in (2, 4):
            h = build_syk(sample_couplings(DisorderSpec(10, q, 1.0, seed=3)))
            assert len(h) == math.comb(10, q)
            m = assemble_sparse(h).toarray()
            assert np.allclose(m, m.conj().T, atol=1e-12)

    def test_majorana_product_hermiticity_by_arity(self):
        # pair products are anti-Hermitian (hence the i in the q=2 model);
        # quadruple products are Hermitian (hence the real q=4 prefactor)
        for tup in ((1, 2), (1, 3), (2, 4)):
            assert not majorana_product(tup, 6).is_hermitian
        for tup in ((1, 2, 3, 4), (1, 3, 5, 6), (2, 3, 4, 6)):
            assert majorana_product(tup, 6).is_hermitian


class TestInterpolation:
    def test_endpoints_exact(self):
        h4, h2 = build_hamiltonian_pair(8, seed=5)
        assert build_interpolated(h4, h2, 0.0).items() == h4.items()
        assert build_interpolated(h4, h2, 1.0).items() == h2.items()

    def test_midpoint_matches_dense_average(self):
        h4, h2 = build_hamiltonian_pair(8, seed=6)
        mid = assemble_sparse(build_interpolated(h4, h2, 0.5)).toarray()
        dense = (assemble_sparse(h4).toarray() + assemble_sparse(h2).toarray()) / 2
        assert np.allclose(mid, dense, atol=1e-12)

    def test_g_range_checked(self):
        h4, h2 = build_hamiltonian_pair(4, seed=0)
        with pytest.raises(ValueError):
            build_interpolated(h4, h2, 1.5)
        with pytest.raises(ValueError):
            build_interpolated(h4, h2, -0.1)


class TestAssembly:
    def test_identity_only(self):
        h = PauliSum(2, [(0.5, PauliString.identity(2))])
        assert np.allclose(assemble_sparse(h).toarray(), 0.5 * np.eye(4))

    def test_single_z_is_diagonal(self):
        h = PauliSum(2, [(1.0, PauliString.single(2, 1, "Z"))])
        assert np.allclose(assemble_sparse(h).toarray(),
                           np.diag([1, -1, 1, -1]))

    def test_random_sum_matches_kron_oracle(self):
        rng = np.random.default_rng(12)
        labels = ["XYZ", "ZZI", "IXX", "YIY", "ZXI"]
        terms = [(float(rng.standard_normal()), l) for l in labels]
        h = PauliSum(3, [(c, PauliString.from_label(l)) for c, l in terms])
        dense = sum(c * dense_pauli(l) for c, l in terms)
        assert np.allclose(assemble_sparse(h).toarray(), dense, atol=1e-12)

    def test_memory_budget_enforced(self):
        h4, _ = build_hamiltonian_pair(12, seed=0)
        need = estimate_assembly_bytes(h4)
        with pytest.raises(MemoryBudgetError) as err:
            assemble_sparse(h4, memory_budget_bytes=1024)
        assert err.value.required_bytes == need
        assemble_sparse(h4, memory_budget_bytes=need)   # exactly enough

    def test_sparse_interpolate(self):
        h4, h2 = build_hamiltonian_pair(8, seed=2)
        s4, s2 = assemble_sparse(h4), assemble_sparse(h2)
        mixed = s4.interpolate(s2, 0.25)
        assert np.allclose(mixed.toarray(),
                           0.75 * s4.toarray() + 0.25 * s2.toarray())


@pytest.mark.parametrize("n_major", [6, 10, 12, 14])
def test_syk4_double_degeneracy_for_nonzero_mod8(n_major):
    # exact two-fold degeneracy holds in the N mod 8 in {2, 4, 6} classes
    h4 = build_syk(sample_couplings(DisorderSpec(n_major, 4, 1.0, seed=21)))
    ev = np.linalg.eigvalsh(assemble_sparse(h4).toarray())
    assert np.abs(ev[0::2] - ev[1::2]).max() < 1e-9


def test_dump_round_trip(tmp_path):
    h4, h2 = build_hamiltonian_pair(8, seed=9)
    ham = assemble_sparse(build_interpolated(h4, h2, 0.3))
    path = tmp_path / "h.sykh"
    write_hamiltonian_dump(path, ham, seed=9, n_majorana=8, q=0, g=0.3)
    meta, back = read_hamiltonian_dump(path)
    assert meta == {"seed": 9, "n_majorana": 8, "q": 0, "g": 0.3}
    assert back.dim == ham.dim
    assert np.allclose(back.toarray(), ham.toarray())
