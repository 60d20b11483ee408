"""
Tests for global and K-way partial transposes and negativity.
"""
import pytest
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from tanglekit.engines.fonts import FontSpec, enumerate_fonts, font_det
from tanglekit.engines.state import named_state
from tanglekit.engines.transpose import (
    TransposeError,
    TransposedMatrix,
    decomposition_residual,
    density_matrix,
    font_submatrix_min_eig,
    global_negativity,
    global_pt,
    kway_pt,
    negativity,
)


class TestGlobalTranspose:
    """Tests for global_pt and negativity."""

    def test_product_state_unchanged(self):
        state = named_state('basis', 2, index=0)
        np.testing.assert_array_equal(global_pt(state, 1).m, density_matrix(state))

    def test_bell(self, bell):
        """Bell pair: lowest eigenvalue -1/2, negativity 1."""
        tm = global_pt(bell, 1)
        assert np.linalg.eigvalsh(tm.m)[0] == pytest.approx(-0.5)
        assert negativity(tm) == pytest.approx(1.0)

    def test_hermitian_unit_trace(self, random_states):
        for state in random_states(4, 3):
            for p in range(1, 5):
                m = global_pt(state, p).m
                np.testing.assert_allclose(m, m.conj().T, atol=1e-15)
                assert np.trace(m) == pytest.approx(1.0)

    def test_product_state_negativity_zero(self, zero4):
        for p in range(1, 5):
            assert global_negativity(zero4, p) == pytest.approx(0.0, abs=1e-12)

    def test_ghz4_negativity(self, ghz4):
        assert global_negativity(ghz4, 2) == pytest.approx(1.0)

    def test_two_qubit_negativity_from_determinant(self, random_states):
        """Two qubits: N^2 = 4 |det nu^00|^2."""
        for state in random_states(2, 20):
            d = font_det(state, FontSpec.from_superscript(2, 1, '00'))
            assert global_negativity(state, 1) ** 2 == pytest.approx(4 * abs(d) ** 2, abs=1e-12)

    def test_qubit_out_of_range(self, ghz4):
        with pytest.raises(TransposeError):
            global_pt(ghz4, 5)


class TestKwayTranspose:
    """Tests for kway_pt and the decomposition."""

    def test_two_qubit_equals_global(self, random_states):
        state = random_states(2, 1)[0]
        np.testing.assert_array_equal(kway_pt(state, 2, 2).m, global_pt(state, 2).m)

    def test_ghz4_four_way_elements(self, ghz4):
        """Only (0,15), (15,0), (7,8), (8,7) change."""
        rho = density_matrix(ghz4)
        m = kway_pt(ghz4, 1, 4).m
        changed = np.argwhere(~np.isclose(m, rho, atol=1e-15))
        assert sorted(map(tuple, changed)) == [(0, 15), (7, 8), (8, 7), (15, 0)]
        assert m[0, 15] == 0
        assert m[7, 8] == pytest.approx(0.5)
        assert m[8, 7] == pytest.approx(0.5)

    def test_ghz4_lower_kway_equal_rho(self, ghz4):
        rho = density_matrix(ghz4)
        for K in (2, 3):
            np.testing.assert_allclose(kway_pt(ghz4, 1, K).m, rho, atol=1e-15)

    def test_decomposition_residual(self, random_states):
        for n in (2, 3, 4, 5, 6):
            for state in random_states(n, 3):
                for p in range(1, n + 1):
                    assert decomposition_residual(state, p) < 1e-14

    def test_hermitian_unit_trace(self, random_states):
        state = random_states(4, 1)[0]
        for K in range(2, 5):
            tm = kway_pt(state, 3, K)
            assert tm.K == K
            assert tm.kind == 'kway'
            assert np.trace(tm.m) == pytest.approx(1.0)

    def test_k_out_of_range(self, ghz4):
        with pytest.raises(TransposeError):
            kway_pt(ghz4, 1, 5)
        with pytest.raises(TransposeError):
            kway_pt(ghz4, 1, 1)


class TestTransposedMatrix:
    """Tests for TransposedMatrix validation."""

    def test_rejects_non_hermitian(self):
        with pytest.raises(TransposeError):
            TransposedMatrix(kind='global', p=1, m=np.array([[1, 1], [0, 0]]))

    def test_rejects_bad_trace(self):
        with pytest.raises(TransposeError):
            TransposedMatrix(kind='global', p=1, m=np.eye(2))

    def test_kway_needs_k(self):
        with pytest.raises(TransposeError):
            TransposedMatrix(kind='kway', p=1, m=np.diag([1.0, 0.0]))

    def test_negativity_of_plain_array(self):
        assert negativity(np.diag([0.5, 0.5])) == pytest.approx(0.0)

    def test_negativity_rejects_non_hermitian(self):
        with pytest.raises(TransposeError):
            negativity(np.array([[0.5, 1.0], [0.0, 0.5]]))


class TestFontSubmatrix:
    """Tests for the 4x4 font submatrix of the global transpose."""

    def test_bell(self, bell):
        lowest, expected = font_submatrix_min_eig(bell, 1, FontSpec.from_superscript(2, 1, '00'))
        assert lowest == pytest.approx(-0.5)
        assert expected == pytest.approx(-0.5)

    def test_basis_state(self, zero4):
        lowest, expected = font_submatrix_min_eig(zero4, 1, FontSpec.from_superscript(4, 1, '0000'))
        assert lowest == pytest.approx(0.0, abs=1e-15)
        assert expected == 0

    def test_random_states(self, random_states):
        """Lowest eigenvalue of every canonical font's submatrix is -|D|."""
        for state in random_states(4, 3):
            for K in range(2, 5):
                for spec in enumerate_fonts(4, 2, K):
                    lowest, expected = font_submatrix_min_eig(state, 2, spec)
                    assert lowest == pytest.approx(expected, abs=1e-12)

    def test_target_mismatch(self, ghz4):
        with pytest.raises(TransposeError):
            font_submatrix_min_eig(ghz4, 2, FontSpec.from_superscript(4, 1, '0000'))
