"""
Tests for the state engine: states, local unitaries, permutations, sampling.
"""
import pytest
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from tanglekit.engines.state import (
    InvalidStateError,
    LocalUnitary,
    PureState,
    QubitIndex,
    apply_local_unitary,
    apply_permutation,
    haar_su2,
    haar_u2,
    inverse_permutation,
    named_state,
    random_state,
    relabel_permutation,
    tensor_product,
)

SQRT2 = np.sqrt(2.0)


class TestPureState:
    """Tests for PureState construction."""

    def test_from_amplitudes_infers_n(self):
        state = PureState.from_amplitudes([1, 0, 0, 0, 0, 0, 0, 0])
        assert state.n == 3
        assert state.dim == 8

    def test_normalizes_with_warning(self, capsys):
        """Off-norm input is rescaled and a warning goes to stderr."""
        state = PureState.from_amplitudes([1, 1, 0, 0])
        assert state.norm() == pytest.approx(1.0, abs=1e-12)
        assert state.norm_deviation == pytest.approx(1.0)
        assert 'not normalized' in capsys.readouterr().err

    def test_no_warning_when_normalized(self, capsys):
        PureState.from_amplitudes([1 / SQRT2, 0, 0, 1 / SQRT2])
        assert capsys.readouterr().err == ''

    def test_rejects_bad_length(self):
        with pytest.raises(InvalidStateError):
            PureState.from_amplitudes([1, 0, 0])

    def test_rejects_zero_norm(self):
        with pytest.raises(InvalidStateError):
            PureState.from_amplitudes([0, 0])

    def test_constructor_rejects_unnormalized(self):
        """Direct construction does not rescale; off-norm amplitudes are an error."""
        with pytest.raises(InvalidStateError, match='not normalized'):
            PureState(n=2, amp=np.array([1.0, 0.0, 0.0, 1.0]))

    def test_constructor_accepts_rounding_error(self):
        state = PureState(n=1, amp=np.array([1.0 + 1e-10, 0.0]))
        assert state.n == 1

    def test_no_normalize_keeps_strict_check(self):
        with pytest.raises(InvalidStateError):
            PureState.from_amplitudes([1, 1, 0, 0], normalize=False)

    def test_named_amplitudes_exact(self):
        assert named_state('ghz', 4).amp[0] == np.sqrt(0.5)
        assert named_state('bell', 2).amp[3] == np.sqrt(0.5)
        assert named_state('w', 3).amp[1] == np.sqrt(1.0 / 3)

    def test_amplitudes_read_only(self, ghz4):
        with pytest.raises(ValueError):
            ghz4.amp[0] = 0

    def test_tensor_view(self, ghz4):
        """Axis m-1 of the tensor view is qubit m."""
        t = ghz4.tensor()
        assert t.shape == (2, 2, 2, 2)
        assert t[1, 1, 1, 1] == pytest.approx(1 / SQRT2)

    def test_amplitude_by_bits(self, chi):
        assert chi.amplitude((0, 0, 1, 1)) == pytest.approx(-1 / np.sqrt(8))
        with pytest.raises(InvalidStateError):
            chi.amplitude((0, 1))

    def test_too_many_qubits(self):
        with pytest.raises(InvalidStateError):
            named_state('ghz', 13)


class TestQubitIndex:
    """Tests for QubitIndex."""

    def test_round_trip(self):
        q = QubitIndex.from_index(5, 4)
        assert q.bits == (0, 1, 0, 1)
        assert q.index == 5

    def test_flip(self):
        assert QubitIndex((0, 0, 0)).flip(1, 3).index == 5

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidStateError):
            QubitIndex.from_index(8, 3)


class TestNamedState:
    """Tests for named benchmark states."""

    def test_ghz(self, ghz4):
        assert ghz4.amp[0] == pytest.approx(1 / SQRT2)
        assert ghz4.amp[15] == pytest.approx(1 / SQRT2)
        assert np.count_nonzero(ghz4.amp) == 2

    def test_chi(self, chi):
        """Signs of the chi kets: |0011> negative, |1100> positive."""
        assert chi.amp[3] == pytest.approx(-1 / np.sqrt(8))
        assert chi.amp[12] == pytest.approx(1 / np.sqrt(8))
        assert chi.amp[5] == pytest.approx(-1 / np.sqrt(8))
        assert np.count_nonzero(chi.amp) == 8

    def test_w3(self, w3):
        nonzero = np.flatnonzero(w3.amp)
        assert list(nonzero) == [1, 2, 4]
        assert w3.amp[1] == pytest.approx(1 / np.sqrt(3))

    def test_bell_pairs(self, bell_pairs4):
        assert list(np.flatnonzero(bell_pairs4.amp)) == [0, 3, 12, 15]
        assert bell_pairs4.amp[0] == pytest.approx(0.5)

    def test_basis(self):
        state = named_state('basis', 3, index=6)
        assert state.amp[6] == 1.0
        assert state.norm() == 1.0

    def test_chi_requires_four_qubits(self):
        with pytest.raises(InvalidStateError):
            named_state('chi', 3)

    def test_bell_requires_two_qubits(self):
        with pytest.raises(InvalidStateError):
            named_state('bell', 3)

    def test_basis_requires_index(self):
        with pytest.raises(InvalidStateError):
            named_state('basis', 3)

    def test_unknown_name(self):
        with pytest.raises(InvalidStateError):
            named_state('cluster', 4)

    def test_tensor_product_of_bells(self, bell, bell_pairs4):
        product = tensor_product(bell, bell)
        np.testing.assert_allclose(product.amp, bell_pairs4.amp)


class TestLocalUnitary:
    """Tests for LocalUnitary and its constructors."""

    def test_from_x_zero_is_identity(self):
        """U(0) is exactly the identity."""
        assert np.array_equal(LocalUnitary.from_x(0).u, np.eye(2))

    def test_from_x_is_special(self):
        assert LocalUnitary.from_x(0.3 - 1.2j).is_special()

    def test_rejects_non_unitary(self):
        with pytest.raises(InvalidStateError):
            LocalUnitary(qubit=1, u=np.array([[1, 1], [0, 1]]))

    def test_rejects_bad_shape(self):
        with pytest.raises(InvalidStateError):
            LocalUnitary(qubit=1, u=np.eye(3))

    def test_identity(self):
        assert LocalUnitary.identity(2).is_special()


class TestApplyLocalUnitary:
    """Tests for apply_local_unitary."""

    def test_identity_keeps_amplitudes(self, chi):
        out = apply_local_unitary(chi, LocalUnitary.identity(3))
        np.testing.assert_array_equal(out.amp, chi.amp)

    def test_bit_flip_on_qubit_one(self):
        """X on qubit 1 maps |0000> to |1000> (index 8)."""
        zero = named_state('basis', 4, index=0)
        out = apply_local_unitary(zero, LocalUnitary(qubit=1, u=np.array([[0, 1], [1, 0]])))
        assert out.amp[8] == 1.0
        assert np.count_nonzero(out.amp) == 1

    def test_bit_flip_on_last_qubit(self):
        zero = named_state('basis', 4, index=0)
        out = apply_local_unitary(zero, LocalUnitary(qubit=4, u=np.array([[0, 1], [1, 0]])))
        assert out.amp[1] == 1.0

    def test_from_x_one_on_single_qubit(self):
        """U(1)|0> = (|0> + |1>)/sqrt(2)."""
        zero = PureState(n=1, amp=np.array([1.0, 0.0]))
        out = apply_local_unitary(zero, LocalUnitary.from_x(1.0))
        np.testing.assert_allclose(out.amp, [1 / SQRT2, 1 / SQRT2])

    def test_preserves_norm(self, random_states):
        for state in random_states(5, 10):
            for q in range(1, 6):
                out = apply_local_unitary(state, haar_u2(q, qubit=q))
                assert out.norm() == pytest.approx(1.0, abs=1e-12)

    def test_qubit_out_of_range(self, ghz4):
        with pytest.raises(InvalidStateError):
            apply_local_unitary(ghz4, LocalUnitary.identity(5))


class TestApplyPermutation:
    """Tests for apply_permutation."""

    def test_identity(self, chi):
        out = apply_permutation(chi, (1, 2, 3, 4))
        np.testing.assert_array_equal(out.amp, chi.amp)

    def test_swap_one_two(self):
        """swap(1,2) maps |0100> to |1000>."""
        state = named_state('basis', 4, index=4)
        out = apply_permutation(state, (2, 1, 3, 4))
        assert out.amp[8] == 1.0

    def test_source_qubit_moves_to_destination(self):
        """perm[m-1] is the destination of qubit m: qubit 1 -> 3 takes |100> to |001>."""
        state = named_state('basis', 3, index=4)
        out = apply_permutation(state, (3, 1, 2))
        assert out.amp[1] == 1.0

    def test_inverse_restores_exactly(self, random_states):
        perm = (3, 1, 4, 2)
        for state in random_states(4, 5):
            back = apply_permutation(apply_permutation(state, perm), inverse_permutation(perm))
            np.testing.assert_array_equal(back.amp, state.amp)

    def test_norm_preserved_exactly(self, random_states):
        state = random_states(5, 1)[0]
        out = apply_permutation(state, (5, 4, 3, 2, 1))
        assert np.array_equal(np.sort(np.abs(out.amp)), np.sort(np.abs(state.amp)))

    def test_rejects_non_bijection(self, ghz4):
        with pytest.raises(InvalidStateError):
            apply_permutation(ghz4, (1, 1, 2, 3))

    def test_relabel_permutation(self):
        """Pair (3, 4) moves to the front, the rest follow in order."""
        assert relabel_permutation(4, [3, 4]) == (3, 4, 1, 2)
        assert relabel_permutation(5, [2], [4]) == (2, 1, 3, 5, 4)


class TestRandomSampling:
    """Tests for seeded sampling."""

    def test_random_state_normalized(self):
        assert random_state(3, 11).norm() == pytest.approx(1.0, abs=1e-12)

    def test_random_state_deterministic(self):
        np.testing.assert_array_equal(random_state(4, 7).amp, random_state(4, 7).amp)

    def test_random_state_seed_matters(self):
        assert not np.array_equal(random_state(4, 7).amp, random_state(4, 8).amp)

    def test_haar_su2_determinant_one(self):
        for seed in range(20):
            assert haar_su2(seed).det() == pytest.approx(1.0, abs=1e-12)

    def test_haar_su2_deterministic(self):
        np.testing.assert_array_equal(haar_su2(3).u, haar_su2(3).u)

    def test_haar_u2_is_unitary(self):
        u = haar_u2(5, qubit=2)
        assert u.qubit == 2
        np.testing.assert_allclose(u.u.conj().T @ u.u, np.eye(2), atol=1e-12)
        assert abs(u.det()) == pytest.approx(1.0, abs=1e-12)

    def test_generator_is_shared(self):
        """Passing one Generator draws successive samples from it."""
        rng = np.random.default_rng(0)
        first = haar_su2(rng)
        second = haar_su2(rng)
        assert not np.array_equal(first.u, second.u)
