"""
Tests for the invariant formulas and the invariant report.
"""
import json
import pytest
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from tanglekit.engines.invariants import (
    InvariantError,
    InvariantReport,
    beta_pair,
    complement_residual,
    full_report,
    i5_pair,
    i_n_even,
    i_n_full,
    i_n_odd_pair,
    j_pair,
    sum_rule_residual,
    subset_invariant,
    tau3,
    tau3_bracket,
    tau5,
    tau_n_even,
    tau_n_odd_pair,
    vanish_odd_check,
    witness_spread,
)
from tanglekit.engines.fonts import FontSpec, font_det
from tanglekit.engines.state import apply_local_unitaries, apply_local_unitary, haar_su2, haar_u2, named_state
from tanglekit.utils.constants import BENCHMARKS


class TestEvenInvariant:
    """Tests for I_N and tau_N at even n."""

    def test_ghz4(self, ghz4):
        assert i_n_even(ghz4) == pytest.approx(0.5)
        tau, pair = tau_n_even(ghz4)
        assert tau == pytest.approx(1.0)
        assert pair == (1, 2)

    def test_chi_is_zero(self, chi):
        assert abs(i_n_even(chi)) < 1e-15

    def test_w4_is_zero(self, w4):
        assert tau_n_even(w4)[0] == 0

    def test_bell_pairs(self, bell_pairs4):
        assert tau_n_even(bell_pairs4)[0] == pytest.approx(1.0)

    def test_two_qubit_bell(self, bell):
        assert tau_n_even(bell)[0] == pytest.approx(1.0)

    def test_full_sum_is_twice_i_n(self, random_states):
        for state in random_states(4, 3):
            assert i_n_full(state) == pytest.approx(2 * i_n_even(state), abs=1e-14)

    def test_witness_independence(self, random_states):
        for n in (4, 6):
            for state in random_states(n, 3):
                assert witness_spread(state) < 1e-10

    def test_odd_n_rejected(self, ghz3):
        with pytest.raises(InvariantError):
            i_n_even(ghz3)

    def test_same_pair_rejected(self, ghz4):
        with pytest.raises(InvariantError):
            i_n_even(ghz4, 2, 2)

    def test_local_unitary_invariance(self, random_states):
        state = random_states(4, 1)[0]
        before = i_n_even(state)
        moved = apply_local_unitaries(state, [haar_su2(10 + q, q) for q in range(1, 5)])
        assert abs(i_n_even(moved) - before) < 1e-10
        moved = apply_local_unitaries(state, [haar_u2(20 + q, q) for q in range(1, 5)])
        assert abs(abs(i_n_even(moved)) - abs(before)) < 1e-10


def nway_det(state, sup):
    return font_det(state, FontSpec.from_superscript(state.n, 1, sup))


class TestSubsetInvariant:
    """Tests for signed N-way sums invariant under unitaries on part of the qubits."""

    def test_three_qubit_subset_terms(self, random_states):
        state = random_states(4, 1)[0]
        expected = (nway_det(state, '0000') - nway_det(state, '0100')
                    - nway_det(state, '0010') + nway_det(state, '0110'))
        assert abs(subset_invariant(state, (1, 2, 3)) - expected) < 1e-15

    def test_pair_with_summed_qubit(self, random_states):
        """Leading four-way combination of J_12."""
        state = random_states(4, 1)[0]
        expected = (nway_det(state, '0000') - nway_det(state, '0100')
                    + nway_det(state, '0010') - nway_det(state, '0110'))
        assert abs(subset_invariant(state, (1, 2), summed=(3,)) - expected) < 1e-15

    def test_every_qubit_is_full_sum(self, random_states):
        for n in (4, 5):
            state = random_states(n, 1)[0]
            assert abs(subset_invariant(state, range(1, n + 1)) - i_n_full(state)) < 1e-14

    def test_ghz4(self, ghz4):
        assert subset_invariant(ghz4, (1, 2, 3)) == pytest.approx(0.5)

    def test_unchanged_by_unitaries_on_subset(self, random_states):
        for state in random_states(5, 3):
            before = subset_invariant(state, (1, 2, 4), summed=(5,))
            moved = apply_local_unitaries(state, [haar_su2(40 + q, q) for q in (1, 2, 4)])
            assert abs(subset_invariant(moved, (1, 2, 4), summed=(5,)) - before) < 1e-10

    def test_changed_by_unitary_outside_subset(self, random_states):
        state = random_states(4, 1)[0]
        before = subset_invariant(state, (1, 2, 3))
        moved = apply_local_unitary(state, haar_su2(7, 4))
        assert abs(subset_invariant(moved, (1, 2, 3)) - before) > 1e-6

    def test_target_required(self, ghz4):
        with pytest.raises(InvariantError, match='qubit 1'):
            subset_invariant(ghz4, (2, 3))

    def test_overlap_rejected(self, ghz4):
        with pytest.raises(InvariantError, match='both'):
            subset_invariant(ghz4, (1, 2), summed=(2,))

    def test_out_of_range(self, ghz4):
        with pytest.raises(InvariantError):
            subset_invariant(ghz4, (1, 5))


class TestThreeQubits:
    """Tests for the three-tangle."""

    def test_ghz3(self, ghz3):
        assert tau3(ghz3) == pytest.approx(1.0)

    def test_w3(self, w3):
        assert tau3(w3) == pytest.approx(0.0, abs=1e-15)

    def test_odd_pair_matches_bracket(self, random_states):
        for state in random_states(3, 10):
            assert abs(i_n_odd_pair(state, 1, 3) - tau3_bracket(state)) < 1e-10

    def test_pair_choice_does_not_matter(self, random_states):
        state = random_states(3, 1)[0]
        for p, q in [(1, 2), (2, 3), (3, 1), (2, 1)]:
            assert tau_n_odd_pair(state, p, q) == pytest.approx(tau3(state), abs=1e-10)

    def test_wrong_n(self, ghz4):
        with pytest.raises(InvariantError):
            tau3(ghz4)


class TestOddInvariants:
    """Tests for the odd-n vanishing sum and the pair invariant."""

    def test_vanishing(self, random_states):
        for n in (3, 5):
            for state in random_states(n, 5):
                for p in range(1, n + 1):
                    assert vanish_odd_check(state, p) < 1e-12

    def test_vanishing_needs_odd_n(self, ghz4):
        with pytest.raises(InvariantError):
            vanish_odd_check(ghz4)

    def test_ghz5(self, ghz5):
        assert i5_pair(ghz5) == pytest.approx(0.25)
        assert tau5(ghz5) == pytest.approx(1.0)
        assert tau_n_odd_pair(ghz5) == pytest.approx(1.0)

    def test_w5_is_zero(self):
        assert i5_pair(named_state('w', 5)) == 0

    def test_printed_five_qubit_form(self, random_states):
        state = random_states(5, 1)[0]
        for p, q in [(1, 5), (2, 4), (5, 1), (3, 2)]:
            assert abs(i5_pair(state, p, q) - i_n_odd_pair(state, p, q)) < 1e-10

    def test_odd_pair_local_unitary_invariance(self, random_states):
        state = random_states(5, 1)[0]
        before = i_n_odd_pair(state, 2, 4)
        moved = apply_local_unitaries(state, [haar_su2(30 + q, q) for q in range(1, 6)])
        assert abs(i_n_odd_pair(moved, 2, 4) - before) < 1e-9

    def test_even_n_rejected(self, ghz4):
        with pytest.raises(InvariantError):
            i_n_odd_pair(ghz4, 1, 4)

    def test_i5_wrong_n(self, ghz3):
        with pytest.raises(InvariantError):
            i5_pair(ghz3)


class TestFourQubitPairs:
    """Tests for J, beta, the sum rule, and complement symmetry."""

    def test_ghz4(self, ghz4):
        for pair in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]:
            assert j_pair(ghz4, pair) == pytest.approx(0.25)
            assert beta_pair(ghz4, pair) == pytest.approx(1 / 3)

    def test_chi(self, chi):
        assert j_pair(chi, (1, 2)) == pytest.approx(-0.25)
        assert j_pair(chi, (1, 4)) == pytest.approx(0.5)
        assert j_pair(chi, (2, 3)) == pytest.approx(0.5)
        assert beta_pair(chi, (1, 4)) == pytest.approx(2 / 3)

    def test_bell_pairs(self, bell_pairs4):
        assert j_pair(bell_pairs4, (1, 2)) == pytest.approx(0.75)
        assert j_pair(bell_pairs4, (3, 4)) == pytest.approx(0.75)
        assert j_pair(bell_pairs4, (1, 3)) == pytest.approx(0.0, abs=1e-15)

    def test_pair_order_ignored(self, chi):
        assert j_pair(chi, (4, 1)) == j_pair(chi, (1, 4))

    def test_sum_rule(self, random_states):
        for state in random_states(4, 10):
            assert sum_rule_residual(state) < 1e-10

    def test_complement_symmetry(self, random_states):
        for state in random_states(4, 10):
            assert complement_residual(state) < 1e-10

    def test_beta_in_unit_interval_for_benchmarks(self, ghz4, chi, bell_pairs4):
        for state in (ghz4, chi, bell_pairs4):
            for pair in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]:
                assert 0.0 <= beta_pair(state, pair) <= 1.0 + 1e-12

    def test_wrong_n(self, ghz3):
        with pytest.raises(InvariantError):
            j_pair(ghz3, (1, 2))

    def test_bad_pair(self, ghz4):
        with pytest.raises(InvariantError):
            j_pair(ghz4, (1, 1))
        with pytest.raises(InvariantError):
            j_pair(ghz4, (1, 2, 3))


class TestBenchmarks:
    """Every row of the benchmark table through full_report."""

    @pytest.mark.parametrize('label,generator,n,expected', BENCHMARKS,
                             ids=[row[0] for row in BENCHMARKS])
    def test_benchmark_values(self, label, generator, n, expected):
        report = full_report(named_state(generator, n))
        for key, value in expected.items():
            assert abs(report[key] - value) < 1e-12, key


class TestInvariantReport:
    """Tests for InvariantReport and InvariantEngine."""

    def test_four_qubit_keys(self, ghz4):
        report = full_report(ghz4)
        for key in ('IN', 'tauN', 'I4', 'tau4', 'J_12', 'beta_34', 'sum_rule_residual',
                    'negativity_1', 'negativity_4', 'font_census'):
            assert key in report
        assert 'tau3' not in report

    def test_three_qubit_keys(self, ghz3):
        report = full_report(ghz3)
        assert 'tau3' in report
        assert 'tauN_13' in report
        assert 'tauN_31' in report
        assert 'IN' not in report

    def test_two_qubit_keys(self, bell):
        report = full_report(bell)
        assert report['tau2'] == pytest.approx(1.0)
        assert report['negativity_1'] == pytest.approx(1.0)

    def test_font_census(self, ghz4):
        census = full_report(ghz4)['font_census']
        assert census['p1_K4'] == 1
        assert census['p2_K2'] == 0

    def test_negativity_non_negative(self, zero4):
        report = full_report(zero4)
        assert all(report[f"negativity_{p}"] >= 0.0 for p in range(1, 5))

    def test_names_ordered(self, ghz4):
        names = full_report(ghz4).names()
        assert names.index('IN') < names.index('J_12')

    def test_select(self, chi):
        report = full_report(chi).select(['tau4'])
        assert report.names() == ['tau4']
        assert report['tau4'] == pytest.approx(0.0, abs=1e-15)

    def test_select_unknown(self, ghz3):
        with pytest.raises(InvariantError, match='tau4'):
            full_report(ghz3).select(['tau4'])

    def test_to_json(self, ghz4):
        data = json.loads(full_report(ghz4).to_json())
        assert data['state']['n'] == 4
        assert data['entries']['I4'] == pytest.approx([0.5, 0.0])
        assert data['entries']['tau4'] == pytest.approx(1.0)
        assert data['entries']['font_census']['p1_K4'] == 1

    def test_to_dataframe(self, ghz3):
        df = full_report(ghz3).to_dataframe()
        assert list(df.columns) == ['name', 'value', 'definition']
        assert 'font_census.p1_K3' in set(df['name'])
        assert 'tau3' in set(df['name'])

    def test_manual_report(self):
        report = InvariantReport(n=2)
        report.add('tau2', 1.0, 'test')
        assert report.to_dict()['entries'] == {'tau2': 1.0}
        assert isinstance(report.to_dataframe().iloc[0]['value'], (float, np.floating))
