"""
Local-unitary invariants and entanglement monotones built from font determinants.

Families:
    - even n: I_N(p, q), the signed sum of N-way fonts with p and q bits 0,
      and the N-tangle tau_N = 4|I_N|^2
    - n = 3: the three-tangle from N-way and 2-way fonts
    - odd n: the degree-4 pair invariant (I0 + I1)^2 - 4 E0 E1 and
      tau = 4|.|; five qubits also in its printed long form
    - n = 4: pair invariants J_pq, pair tangles beta_pq = (4/3)|J_pq|,
      and the sum rule I4^2 = (J_12 + J_13 + J_14) / 3

All formulas use qubit 1 as the font target; other qubit choices are
obtained by relabeling the state first.
"""

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .fonts import FontSpec, font_census, font_det, font_dets
from .state import PureState, apply_permutation, relabel_permutation
from .transpose import global_negativity
from ..utils import log
from ..utils.constants import REPORT_KEY_ORDER
from ..utils.helpers import complex_to_pair, indices_with_fixed_bits, pair_key, parity_signs


class InvariantError(ValueError):
    """Raised when an invariant is requested for the wrong qubit count or pair."""
    pass


# === Helpers ===

def _signed_font_sum(state: PureState, p: int, vary: Sequence[int], fixed: Dict[int, int],
                     sign_qubits: Sequence[int]) -> complex:
    """Sum over indices with `fixed` bits of (-1)^(bits of sign_qubits) * D."""
    n = state.n
    idx = indices_with_fixed_bits(n, fixed)
    dets = font_dets(state.amp, n, p, vary, idx)
    return complex(np.sum(parity_signs(idx, sign_qubits, n) * dets))


def _check_pair(n: int, p: int, q: int) -> None:
    if p == q:
        raise InvariantError(f"pair needs two distinct qubits, got ({p}, {q})")
    if not 1 <= p <= n or not 1 <= q <= n:
        raise InvariantError(f"pair ({p}, {q}) out of range for {n} qubits")


def _require_n(state: PureState, n: int, what: str) -> None:
    if state.n != n:
        raise InvariantError(f"{what} needs {n} qubits, got {state.n}")


def _D(state: PureState, sup: str, spectators: Optional[Dict[int, int]] = None) -> complex:
    """Font w.r.t. qubit 1 written as printed: superscript plus spectator map."""
    return font_det(state, FontSpec.from_superscript(state.n, 1, sup, spectators))


# === Even n ===

def i_n_full(state: PureState, p: int = 1) -> complex:
    """Signed sum of all N-way fonts with p bit 0 (2 * I_N for even n, 0 for odd n)."""
    n = state.n
    if not 1 <= p <= n:
        raise InvariantError(f"qubit {p} out of range for {n} qubits")
    if n < 2:
        raise InvariantError("N-way fonts need at least 2 qubits")
    every = list(range(1, n + 1))
    return _signed_font_sum(state, p, every, {p: 0}, every)


def i_n_even(state: PureState, p: int = 1, q: int = 2) -> complex:
    """Signed sum of N-way fonts w.r.t. p with the p and q bits fixed to 0."""
    n = state.n
    if n % 2:
        raise InvariantError(f"I_N is defined for even n; n={n} is odd (see vanish_odd_check)")
    _check_pair(n, p, q)
    every = list(range(1, n + 1))
    return _signed_font_sum(state, p, every, {p: 0, q: 0}, every)


def tau_n_even(state: PureState, p: int = 1, q: int = 2) -> Tuple[float, Tuple[int, int]]:
    """N-tangle 4|I_N|^2 together with the witness pair used."""
    value = i_n_even(state, p, q)
    return 4.0 * abs(value) ** 2, (p, q)


def witness_spread(state: PureState) -> float:
    """max - min of tau_N over every witness pair."""
    values = [tau_n_even(state, p, q)[0] for p, q in combinations(range(1, state.n + 1), 2)]
    return float(max(values) - min(values))


# === Invariants of unitaries on a subset of qubits ===

def subset_invariant(state: PureState, qubits: Sequence[int], summed: Sequence[int] = ()) -> complex:
    """
    Signed sum of N-way fonts w.r.t. qubit 1 left unchanged by determinant-1
    unitaries on `qubits`.

    Superscript bits of `qubits` and `summed` run over 0 and 1, every other bit
    is 0, and each font carries (-1)^(bits of qubits). With qubits (1, 2, 3) this
    is D^{000..} - D^{010..} - D^{001..} + D^{011..}; with qubits (1, 2) and
    summed (3,) it is the leading four-way term of J_12; with every qubit it is
    i_n_full.

    Args:
        state: PureState with n >= 2
        qubits: Qubits the unitaries act on; must contain qubit 1
        summed: Further qubits whose bits are summed without a sign

    Returns:
        Complex invariant value

    Raises:
        InvariantError: If qubit 1 is missing, a qubit is out of range, or the two sets overlap
    """
    n = state.n
    if n < 2:
        raise InvariantError("N-way fonts need at least 2 qubits")
    acted = sorted(set(int(m) for m in qubits))
    extra = sorted(set(int(m) for m in summed))
    if 1 not in acted:
        raise InvariantError(f"qubit 1 (the font target) must be among the qubits, got {tuple(acted)}")
    for m in acted + extra:
        if not 1 <= m <= n:
            raise InvariantError(f"qubit {m} out of range for {n} qubits")
    if set(acted) & set(extra):
        raise InvariantError(f"qubits {sorted(set(acted) & set(extra))} are both signed and summed")

    free = set(acted) | set(extra)
    fixed = {m: 0 for m in range(1, n + 1) if m == 1 or m not in free}
    return _signed_font_sum(state, 1, list(range(1, n + 1)), fixed, acted)


# === Four qubits ===

def _j_12(s: PureState) -> complex:
    four = _D(s, '0000') - _D(s, '0100') + _D(s, '0010') - _D(s, '0110')
    two = (_D(s, '00', {3: 0, 4: 0}) * _D(s, '00', {3: 1, 4: 1})
           + _D(s, '00', {3: 1, 4: 0}) * _D(s, '00', {3: 0, 4: 1}))
    three = ((_D(s, '000', {3: 0}) - _D(s, '010', {3: 0})) * (_D(s, '000', {3: 1}) - _D(s, '010', {3: 1}))
             + (_D(s, '000', {4: 0}) - _D(s, '010', {4: 0})) * (_D(s, '000', {4: 1}) - _D(s, '010', {4: 1})))
    return four ** 2 + 8 * two - 4 * three


def _j_13(s: PureState) -> complex:
    four = _D(s, '0000') - _D(s, '0010') + _D(s, '0001') - _D(s, '0011')
    two = (_D(s, '00', {2: 0, 4: 0}) * _D(s, '00', {2: 1, 4: 1})
           + _D(s, '00', {2: 1, 4: 0}) * _D(s, '00', {2: 0, 4: 1}))
    three = ((_D(s, '000', {2: 0}) - _D(s, '010', {2: 0})) * (_D(s, '000', {2: 1}) - _D(s, '010', {2: 1}))
             + (_D(s, '000', {4: 0}) - _D(s, '001', {4: 0})) * (_D(s, '000', {4: 1}) - _D(s, '001', {4: 1})))
    return four ** 2 + 8 * two - 4 * three


def _j_14(s: PureState) -> complex:
    four = _D(s, '0000') - _D(s, '0001') + _D(s, '0010') - _D(s, '0011')
    two = (_D(s, '00', {2: 0, 3: 0}) * _D(s, '00', {2: 1, 3: 1})
           + _D(s, '00', {2: 1, 3: 0}) * _D(s, '00', {2: 0, 3: 1}))
    three = ((_D(s, '000', {2: 0}) - _D(s, '001', {2: 0})) * (_D(s, '000', {2: 1}) - _D(s, '001', {2: 1}))
             + (_D(s, '000', {3: 0}) - _D(s, '001', {3: 0})) * (_D(s, '000', {3: 1}) - _D(s, '001', {3: 1})))
    return four ** 2 + 8 * two - 4 * three


_PAIR_FORMULAS = {(1, 2): _j_12, (1, 3): _j_13, (1, 4): _j_14}


def _normalize_pair(pair: Sequence[int]) -> Tuple[int, int]:
    if len(pair) != 2:
        raise InvariantError(f"pair must have two qubits, got {tuple(pair)}")
    p, q = sorted(int(m) for m in pair)
    _check_pair(4, p, q)
    return p, q


def j_pair(state: PureState, pair: Sequence[int]) -> complex:
    """
    Four-qubit pair invariant J for `pair`.

    Pairs (1,2), (1,3), (1,4) use their own formulas; any other pair is
    moved onto (1,2), remaining qubits in increasing order, and uses the
    (1,2) formula.
    """
    _require_n(state, 4, "J")
    p, q = _normalize_pair(pair)
    if (p, q) in _PAIR_FORMULAS:
        return complex(_PAIR_FORMULAS[(p, q)](state))
    moved = apply_permutation(state, relabel_permutation(4, [p, q]))
    return complex(_j_12(moved))


def beta_pair(state: PureState, pair: Sequence[int]) -> float:
    """Pair tangle (4/3)|J|."""
    return 4.0 / 3.0 * abs(j_pair(state, pair))


def sum_rule_residual(state: PureState) -> float:
    """|I4^2 - (J_12 + J_13 + J_14) / 3|."""
    _require_n(state, 4, "sum rule")
    i4 = i_n_even(state, 1, 2)
    total = j_pair(state, (1, 2)) + j_pair(state, (1, 3)) + j_pair(state, (1, 4))
    return abs(i4 ** 2 - total / 3.0)


def complement_residual(state: PureState) -> float:
    """max |J(S) - J(complement of S)| over the three splits of four qubits."""
    _require_n(state, 4, "complement symmetry")
    splits = [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]
    return max(abs(j_pair(state, a) - j_pair(state, b)) for a, b in splits)


# === Odd n ===

def tau3_bracket(state: PureState) -> complex:
    """(D^000 - D^001)^2 - 4 D_(A2)0^00 D_(A2)1^00 (the hyperdeterminant)."""
    _require_n(state, 3, "tau3")
    s = state
    return (_D(s, '000') - _D(s, '001')) ** 2 - 4 * _D(s, '00', {2: 0}) * _D(s, '00', {2: 1})


def tau3(state: PureState) -> float:
    """Three-tangle 4|(D^000 - D^001)^2 - 4 D_(A2)0^00 D_(A2)1^00|."""
    return 4.0 * abs(tau3_bracket(state))


def vanish_odd_check(state: PureState, p: int = 1) -> float:
    """|signed sum of N-way fonts| for odd n; cancels exactly."""
    if state.n % 2 == 0:
        raise InvariantError(f"odd-n vanishing needs odd n, got n={state.n}")
    return abs(i_n_full(state, p))


def odd_pair_components(state: PureState, p1: int, p2: int) -> Tuple[complex, complex, complex, complex]:
    """
    (I0, I1, E0, E1) for the odd-n pair invariant.

    After relabeling p1 -> 1 and p2 -> n (others in increasing order), with
    fonts w.r.t. qubit 1 and the bits of qubits 1 and 2 fixed to 0:
    I_d sums the N-way fonts with qubit n at d, E_d the (N-1)-way fonts
    with spectator qubit n fixed to d; signs are the parity of qubits 3..n-1.
    """
    n = state.n
    if n % 2 == 0 or n < 3:
        raise InvariantError(f"odd pair invariant needs odd n >= 3, got n={n}")
    _check_pair(n, p1, p2)
    moved = apply_permutation(state, relabel_permutation(n, [p1], [p2]))
    every = list(range(1, n + 1))
    reduced = every[:-1]
    middle = list(range(3, n))
    i0 = _signed_font_sum(moved, 1, every, {1: 0, 2: 0, n: 0}, middle)
    i1 = _signed_font_sum(moved, 1, every, {1: 0, 2: 0, n: 1}, middle)
    e0 = _signed_font_sum(moved, 1, reduced, {1: 0, 2: 0, n: 0}, middle)
    e1 = _signed_font_sum(moved, 1, reduced, {1: 0, 2: 0, n: 1}, middle)
    return i0, i1, e0, e1


def i_n_odd_pair(state: PureState, p1: int = 1, p2: Optional[int] = None) -> complex:
    """Degree-4 odd-n invariant (I0 + I1)^2 - 4 E0 E1 (p2 defaults to qubit n)."""
    if p2 is None:
        p2 = state.n
    i0, i1, e0, e1 = odd_pair_components(state, p1, p2)
    return (i0 + i1) ** 2 - 4 * e0 * e1


def tau_n_odd_pair(state: PureState, p1: int = 1, p2: Optional[int] = None) -> float:
    return 4.0 * abs(i_n_odd_pair(state, p1, p2))


def _i5_printed(s: PureState) -> complex:
    t5 = (_D(s, '00000') - _D(s, '00010') + _D(s, '00110') - _D(s, '00100')
          + _D(s, '00001') - _D(s, '00011') + _D(s, '00111') - _D(s, '00101'))
    t4 = [
        _D(s, '0000', {5: d}) - _D(s, '0001', {5: d}) - _D(s, '0010', {5: d}) + _D(s, '0011', {5: d})
        for d in (0, 1)
    ]
    return t5 ** 2 - 4 * t4[0] * t4[1]


def i5_pair(state: PureState, p: int = 1, q: int = 5) -> complex:
    """Five-qubit invariant for (p, q); p -> 1, q -> 5, rest -> 2, 3, 4."""
    _require_n(state, 5, "I5")
    _check_pair(5, p, q)
    if (p, q) == (1, 5):
        return _i5_printed(state)
    moved = apply_permutation(state, relabel_permutation(5, [p], [q]))
    return _i5_printed(moved)


def tau5(state: PureState, p: int = 1, q: int = 5) -> float:
    return 4.0 * abs(i5_pair(state, p, q))


# === Reports ===

def _key_rank(name: str) -> Tuple[int, str]:
    for rank, prefix in enumerate(REPORT_KEY_ORDER):
        if name == prefix or (prefix.endswith('_') and name.startswith(prefix)):
            return rank, name
    return len(REPORT_KEY_ORDER), name


def _json_value(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (complex, np.complexfloating)):
        return complex_to_pair(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


@dataclass
class InvariantReport:
    """Named invariant values for one state."""
    n: int
    source: str = ""
    norm_deviation: float = 0.0
    entries: Dict[str, Any] = field(default_factory=dict)
    definitions: Dict[str, str] = field(default_factory=dict)

    def add(self, name: str, value: Any, definition: str = "") -> None:
        self.entries[name] = value
        self.definitions[name] = definition

    def names(self) -> List[str]:
        return sorted(self.entries, key=_key_rank)

    def __getitem__(self, name: str) -> Any:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def select(self, names: Sequence[str]) -> 'InvariantReport':
        """Sub-report with only `names`; unknown names raise InvariantError."""
        missing = [name for name in names if name not in self.entries]
        if missing:
            raise InvariantError(
                f"not available for n={self.n}: {', '.join(missing)} "
                f"(available: {', '.join(self.names())})"
            )
        sub = InvariantReport(n=self.n, source=self.source, norm_deviation=self.norm_deviation)
        for name in names:
            sub.add(name, self.entries[name], self.definitions.get(name, ""))
        return sub

    def to_dict(self) -> Dict[str, Any]:
        return {
            'state': {
                'n': self.n,
                'source': self.source,
                'norm_deviation': self.norm_deviation,
            },
            'entries': {name: _json_value(self.entries[name]) for name in self.names()},
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_dataframe(self) -> pd.DataFrame:
        """One row per scalar entry; the font census expands to one row per (p, K)."""
        rows = []
        for name in self.names():
            value = self.entries[name]
            definition = self.definitions.get(name, "")
            if isinstance(value, dict):
                for sub, count in value.items():
                    rows.append({'name': f"{name}.{sub}", 'value': count, 'definition': definition})
            else:
                rows.append({'name': name, 'value': value, 'definition': definition})
        return pd.DataFrame(rows, columns=['name', 'value', 'definition'])


class InvariantEngine:
    """Computes every invariant applicable to one state."""

    def __init__(self, state: PureState):
        self.state = state
        self.n = state.n
        self.report = InvariantReport(n=state.n, source=state.source,
                                      norm_deviation=state.norm_deviation)

    def run(self) -> InvariantReport:
        log.debug(f"Computing invariants for {self.n}-qubit state {self.state.source or ''}".rstrip())
        if self.n >= 2 and self.n % 2 == 0:
            self.add_even_entries()
        if self.n >= 3 and self.n % 2 == 1:
            self.add_odd_entries()
        if self.n == 4:
            self.add_four_qubit_entries()
        self.add_negativity_entries()
        self.add_census_entries()
        return self.report

    def add_even_entries(self) -> None:
        value = i_n_even(self.state, 1, 2)
        tau = 4.0 * abs(value) ** 2
        self.report.add('IN', value, "signed sum of N-way fonts w.r.t. qubit 1, bits of qubits 1, 2 fixed to 0")
        self.report.add('tauN', tau, "4|IN|^2, witness pair (1, 2)")
        if self.n == 2:
            self.report.add('tau2', tau, "4|det nu^00|^2")
        if self.n == 4:
            self.report.add('I4', value, "D^0000 + D^0011 - D^0010 - D^0001")
            self.report.add('tau4', tau, "4|I4|^2")

    def add_odd_entries(self) -> None:
        for p, q in permutations(range(1, self.n + 1), 2):
            self.report.add(f"tauN_{pair_key(p, q)}", tau_n_odd_pair(self.state, p, q),
                            f"4|(I0 + I1)^2 - 4 E0 E1|, qubit {p} -> 1, qubit {q} -> n")
        if self.n == 3:
            self.report.add('tau3', tau3(self.state),
                            "4|(D^000 - D^001)^2 - 4 D_(A2)0^00 D_(A2)1^00|")
        if self.n == 5:
            self.report.add('tau5', tau5(self.state), "4|I5|, pair (1, 5)")
            for p, q in permutations(range(1, 6), 2):
                self.report.add(f"tau5_{pair_key(p, q)}", tau5(self.state, p, q),
                                f"4|I5|, qubit {p} -> 1, qubit {q} -> 5")

    def add_four_qubit_entries(self) -> None:
        for p, q in combinations(range(1, 5), 2):
            key = pair_key(p, q)
            j = j_pair(self.state, (p, q))
            self.report.add(f"J_{key}", j, f"pair invariant J for qubits ({p}, {q})")
            self.report.add(f"beta_{key}", 4.0 / 3.0 * abs(j), f"(4/3)|J_{key}|")
        self.report.add('sum_rule_residual', sum_rule_residual(self.state),
                        "|I4^2 - (J_12 + J_13 + J_14) / 3|")

    def add_negativity_entries(self) -> None:
        for p in range(1, self.n + 1):
            value = max(global_negativity(self.state, p), 0.0)
            self.report.add(f"negativity_{p}", value, f"||rho^T_{p}||_1 - 1")

    def add_census_entries(self) -> None:
        census: Dict[str, int] = {}
        for p in range(1, self.n + 1):
            for K in range(2, self.n + 1):
                census[f"p{p}_K{K}"] = font_census(self.state, p, K)
        if census:
            self.report.add('font_census', census, "canonical K-way fonts w.r.t. p with |D| > 1e-12")


def full_report(state: PureState) -> InvariantReport:
    """Every invariant applicable to `state`."""
    return InvariantEngine(state).run()
