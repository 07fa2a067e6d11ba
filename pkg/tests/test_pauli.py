import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syklab.pauli import PauliString, PauliSum, StateVector, expectation, multiply

from helpers import dense_pauli, random_state

ALL_1Q = ["I", "X", "Y", "Z"]


def random_pauli(rng, n_qubits: int) -> PauliString:
    full = (1 << n_qubits) - 1
    return PauliString(n_qubits, int(rng.integers(0, full + 1)),
                       int(rng.integers(0, full + 1)),
                       int(rng.integers(0, 4)))


def test_mask_bounds_checked():
    with pytest.raises(ValueError):
        PauliString(2, x_mask=4)
    with pytest.raises(ValueError):
        PauliString(0)


def test_label_round_trip():
    for label in ("+1 XZIY", "-i YYZI", "+i IIII", "-1 XXXX"):
        assert str(PauliString.from_label(label)) == label


def test_canonical_rendering_places_qubit1_leftmost():
    p = PauliString.single(4, 1, "X")
    assert str(p) == "+1 XIII"
    assert str(PauliString.single(4, 4, "Z")) == "+1 IIIZ"


def test_single_qubit_multiplication_table():
    # X*X = I, X*Z = -iY and cyclic friends
    x = PauliString.single(1, 1, "X")
    z = PauliString.single(1, 1, "Z")
    y = PauliString.single(1, 1, "Y")
    assert (x * x).is_identity
    xz = x * z
    assert (xz.x_mask, xz.z_mask, xz.phase_exp) == (1, 1, 3)   # -i Y
    assert np.allclose(xz.to_matrix(), -1j * y.to_matrix())


def test_two_qubit_product_example():
    # (Z1 X2) * (Z1 Y2) = i Z2, by brute-force dense product
    a = PauliString.from_label("ZX")
    b = PauliString.from_label("ZY")
    prod = a * b
    assert np.allclose(prod.to_matrix(), a.to_matrix() @ b.to_matrix())
    assert np.allclose(prod.to_matrix(), 1j * dense_pauli("IZ"))


def test_product_matches_dense_oracle_exhaustive_2q():
    for la, lb in itertools.product(
            ("".join(p) for p in itertools.product(ALL_1Q, repeat=2)), repeat=2):
        a, b = PauliString.from_label(la), PauliString.from_label(lb)
        assert np.allclose((a * b).to_matrix(),
                           dense_pauli(la) @ dense_pauli(lb), atol=1e-12)


def test_product_matches_dense_oracle_random_4q():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b = random_pauli(rng, 4), random_pauli(rng, 4)
        assert np.allclose((a * b).to_matrix(),
                           a.to_matrix() @ b.to_matrix(), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_multiplication_associative(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    a, b, c = (random_pauli(rng, n) for _ in range(3))
    left = multiply(a, multiply(b, c))
    right = multiply(multiply(a, b), c)
    assert (left.x_mask, left.z_mask, left.phase_exp) == \
        (right.x_mask, right.z_mask, right.phase_exp)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError, match="mismatch"):
        multiply(PauliString.identity(2), PauliString.identity(3))


def test_hermiticity_agrees_with_dense_oracle():
    rng = np.random.default_rng(3)
    for _ in range(60):
        p = random_pauli(rng, 3)
        m = p.to_matrix()
        assert p.is_hermitian == bool(np.allclose(m, m.conj().T, atol=1e-12))


def test_apply_to_basis_examples():
    ident = PauliString.identity(3)
    assert ident.apply_to_basis(5) == (5, 1.0 + 0j)
    x1 = PauliString.single(3, 1, "X")
    assert x1.apply_to_basis(0) == (1, 1.0 + 0j)
    z1 = PauliString.single(3, 1, "Z")
    assert z1.apply_to_basis(1) == (1, -1.0 + 0j)


def test_apply_to_basis_amplitude_modulus_one():
    rng = np.random.default_rng(11)
    for _ in range(40):
        p = random_pauli(rng, 4)
        idx = int(rng.integers(0, 16))
        new, amp = p.apply_to_basis(idx)
        assert new == idx ^ p.x_mask
        assert abs(abs(amp) - 1.0) < 1e-15


def test_expectation_trivial_cases():
    psi = StateVector.basis_state(2, 0)
    assert expectation(PauliString.identity(2), psi) == pytest.approx(1.0)
    assert expectation(PauliString.single(2, 1, "Z"), psi) == pytest.approx(1.0)
    plus = StateVector.from_amplitudes([1, 1])
    assert expectation(PauliString.single(1, 1, "X"), plus) == pytest.approx(1.0)


def test_expectation_matches_dense_oracle():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(1, 5))
        p = random_pauli(rng, n)
        if not p.is_hermitian:
            p = PauliString(n, p.x_mask, p.z_mask, 2 * (p.phase_exp // 2))
        amps = random_state(n, rng)
        dense = np.vdot(amps, p.to_matrix() @ amps).real
        assert expectation(p, amps) == pytest.approx(dense, abs=1e-12)


def test_expectation_rejects_non_hermitian():
    p = PauliString(1, 1, 0, 1)   # iX
    with pytest.raises(ValueError, match="[Hh]ermitian"):
        expectation(p, StateVector.basis_state(1, 0))


def test_apply_matches_matrix():
    rng = np.random.default_rng(9)
    for _ in range(20):
        p = random_pauli(rng, 3)
        amps = random_state(3, rng)
        assert np.allclose(p.apply(amps), p.to_matrix() @ amps, atol=1e-12)


class TestStateVector:
    def test_norm_enforced(self):
        with pytest.raises(ValueError, match="normalized"):
            StateVector(1, np.array([1.0, 1.0]))

    def test_from_amplitudes_normalizes(self):
        sv = StateVector.from_amplitudes([1.0, 1.0])
        assert np.linalg.norm(sv.amplitudes) == pytest.approx(1.0)

    def test_length_checked(self):
        with pytest.raises(ValueError):
            StateVector(2, np.array([1.0, 0.0]))


class TestPauliSum:
    def test_phase_absorbed_into_real_coefficient(self):
        s = PauliSum(1, [(1j, PauliString(1, 1, 1, 3))])   # i * (-iY) = Y
        ((masks, coeff),) = s.items()
        assert masks == (1, 1)
        assert coeff == pytest.approx(1.0)

    def test_rejects_non_hermitian_combination(self):
        with pytest.raises(ValueError, match="imaginary"):
            PauliSum(1, [(1.0, PauliString(1, 1, 0, 1))])   # iX alone
        with pytest.raises(ValueError, match="imaginary"):
            PauliSum(1, [(1j, PauliString.single(1, 1, "X"))])

    def test_duplicates_merge_and_zeros_drop(self):
        x = PauliString.single(2, 1, "X")
        s = PauliSum(2, [(1.0, x), (2.0, x)])
        assert len(s) == 1
        assert s.coefficient(x) == pytest.approx(3.0)
        s.add_term(-3.0, x)
        assert len(s) == 0

    def test_matrix_matches_kron_sum(self):
        terms = [(0.7, "XZ"), (-1.3, "YI"), (0.25, "ZZ")]
        s = PauliSum(2, [(c, PauliString.from_label(l)) for c, l in terms])
        dense = sum(c * dense_pauli(l) for c, l in terms)
        assert np.allclose(s.to_matrix(), dense, atol=1e-12)

    def test_scaled_and_add(self):
        x = PauliString.single(1, 1, "X")
        z = PauliString.single(1, 1, "Z")
        s = PauliSum(1, [(2.0, x)]).scaled(0.5) + PauliSum(1, [(1.0, z)])
        assert s.coefficient(x) == pytest.approx(1.0)
        assert s.coefficient(z) == pytest.approx(1.0)
