"""
Randomized and exact-value verification of every implemented identity.

Each check runs `trials` independent trials, records the worst deviation,
and passes when that deviation is within its tolerance.
"""

from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from .base_processor import BaseSuite, CheckResult, CHECK_COLUMNS
from ..engines.fonts import (
    FontSpec,
    enumerate_fonts,
    font_det,
    pairwise_unitary_invariants,
    sign_relations_deviation,
    transform_fonts,
    transform_fonts_direct,
)
from ..engines.invariants import (
    complement_residual,
    full_report,
    i5_pair,
    i_n_even,
    i_n_odd_pair,
    j_pair,
    sum_rule_residual,
    subset_invariant,
    tau3_bracket,
    vanish_odd_check,
    witness_spread,
)
from ..engines.state import (
    LocalUnitary,
    PureState,
    apply_local_unitaries,
    apply_local_unitary,
    haar_su2,
    haar_u2,
    named_state,
    random_state,
)
from ..engines.transpose import decomposition_residual, font_submatrix_min_eig, global_negativity
from ..utils import log
from ..utils.constants import BENCHMARKS, MAX_VERIFY_QUBITS


class VerificationError(ValueError):
    """Raised for suite arguments outside the supported range."""
    pass


# check name -> identity it verifies, led by the labels of the equations involved
COVERAGE: Dict[str, str] = {
    'lu_invariance_u2': "[uq, in-even, inodd, ifive, j1-j3] |I| unchanged by independent Haar U(2) unitaries on every qubit",
    'lu_invariance_su2': "[uq, in-even, inodd, ifive, j1-j3] I unchanged by independent determinant-1 unitaries on every qubit",
    'negativity_lu': "[nudef] global negativity w.r.t. each qubit unchanged by local unitaries",
    'decomposition': "sum_K kway_pt - (n - 2) rho == global_pt, every qubit p",
    'font_eigenvalue': "[nudef, dnuk] lowest eigenvalue of a font's 4x4 partial-transpose block is -|D|",
    'sign_relations': "[nuk] flipping the target bit, or all other varying bits, negates D",
    'transformation_equations': "[t1-t4] primed fonts from unprimed ones match fonts of U(x)-transformed amplitudes",
    'pairwise_orbit': "[didif, disum, diprod] D0 - D1, (D0 + D1)^2 - 4 E0 E1, D0 D1 - E0 E1 unchanged by U(x) on p and q",
    'subset_invariance': "[didif] signed N-way sum over a qubit subset unchanged by unitaries on that subset",
    'sum_rule': "[in-even, j1-j3] I4^2 == (J_12 + J_13 + J_14) / 3",
    'complement_symmetry': "[j1-j3] J_S == J_(complement of S) for four qubits",
    'odd_vanishing': "[in-even] signed sum of N-way fonts vanishes for odd n",
    'witness_independence': "[in-even, ntang] tau_N identical for every witness pair (p, q)",
    'n3_consistency': "[inzero, inodd] odd-n pair invariant at n = 3 equals the three-tangle bracket",
    'n5_consistency': "[ifive, inodd] printed five-qubit invariant equals the odd-n pair invariant",
    'two_qubit_negativity': "[twoqubit] negativity^2 == 4|det nu^00|^2 for two qubits",
    'benchmark': "[ntang, inodd, ifive, j1-j3] exact invariant values of GHZ, W, chi and Bell x Bell states",
}


def _random_complex(rng: np.random.Generator) -> complex:
    return complex(rng.standard_normal(), rng.standard_normal())


def _invariant_functions(n: int) -> Dict[str, Callable[[PureState], complex]]:
    """Complex-valued invariants checked along local unitary orbits at n qubits."""
    funcs: Dict[str, Callable[[PureState], complex]] = {}
    if n % 2 == 0:
        funcs['IN'] = lambda s: i_n_even(s, 1, 2)
    if n == 3:
        funcs['tau3'] = tau3_bracket
    if n % 2 == 1 and n >= 3:
        for p2 in range(2, n + 1):
            funcs[f"odd_pair_1{p2}"] = (lambda p: lambda s: i_n_odd_pair(s, 1, p))(p2)
    if n == 4:
        for pair in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]:
            funcs[f"J_{pair[0]}{pair[1]}"] = (lambda pr: lambda s: j_pair(s, pr))(pair)
    if n == 5:
        for q in range(2, 6):
            funcs[f"I5_1{q}"] = (lambda qq: lambda s: i5_pair(s, 1, qq))(q)
    return funcs


class VerificationProcessor(BaseSuite):
    """Runs the invariance, identity, and benchmark suites."""

    def __init__(self, seed: int = 0, tolerances: Optional[Dict[str, float]] = None):
        super().__init__(seed=seed, tolerances=tolerances)

    @staticmethod
    def _check_n(n: int) -> None:
        if not 2 <= n <= MAX_VERIFY_QUBITS:
            raise VerificationError(f"verification supports 2 <= n <= {MAX_VERIFY_QUBITS}, got n={n}")

    @staticmethod
    def _check_trials(trials: int) -> None:
        if trials < 0:
            raise VerificationError(f"trials must be >= 0, got {trials}")

    # === Local unitary invariance ===

    def lu_invariance_suite(self, n: int, trials: int) -> List[CheckResult]:
        """Every invariant at n along random local unitary orbits."""
        self._check_n(n)
        self._check_trials(trials)
        results = []
        for name, func in _invariant_functions(n).items():
            u2_devs, su2_devs = [], []
            for trial in range(trials):
                rng = self.trial_rng(f"lu:{n}:{name}", trial)
                state = random_state(n, rng)
                before = func(state)
                moved = apply_local_unitaries(state, [haar_u2(rng, q) for q in range(1, n + 1)])
                u2_devs.append(abs(abs(func(moved)) - abs(before)))
                moved = apply_local_unitaries(state, [haar_su2(rng, q) for q in range(1, n + 1)])
                su2_devs.append(abs(func(moved) - before))
            results.append(self.make_result(f"lu_invariance_u2:{name}", u2_devs, trials,
                                            'lu_invariance_u2', COVERAGE['lu_invariance_u2'], n))
            results.append(self.make_result(f"lu_invariance_su2:{name}", su2_devs, trials,
                                            'lu_invariance_su2', COVERAGE['lu_invariance_su2'], n))
            log.debug(f"  lu invariance {name} (n={n}): done")
        results.append(self._negativity_lu(n, trials))
        return results

    def _negativity_lu(self, n: int, trials: int) -> CheckResult:
        devs = []
        for trial in range(trials):
            rng = self.trial_rng(f"negativity_lu:{n}", trial)
            state = random_state(n, rng)
            moved = apply_local_unitaries(state, [haar_u2(rng, q) for q in range(1, n + 1)])
            for p in range(1, n + 1):
                devs.append(abs(global_negativity(moved, p) - global_negativity(state, p)))
        return self.make_result('negativity_lu', devs, trials, 'negativity_lu',
                                COVERAGE['negativity_lu'], n)

    # === Identities ===

    def identity_suite(self, n: int, trials: int) -> List[CheckResult]:
        """Algebraic identities between fonts, transposes, and invariants at n."""
        self._check_n(n)
        self._check_trials(trials)
        checks: Dict[str, Callable[[np.random.Generator], float]] = {
            'decomposition': lambda rng: self._decomposition(n, rng),
            'font_eigenvalue': lambda rng: self._font_eigenvalue(n, rng),
            'sign_relations': lambda rng: self._sign_relations(n, rng),
        }
        if n >= 3:
            checks['transformation_equations'] = lambda rng: self._transformation(n, rng)
            checks['pairwise_orbit'] = lambda rng: self._pairwise_orbit(n, rng)
            checks['subset_invariance'] = lambda rng: self._subset_invariance(n, rng)
        if n % 2 == 0:
            checks['witness_independence'] = lambda rng: witness_spread(random_state(n, rng))
        else:
            checks['odd_vanishing'] = lambda rng: self._odd_vanishing(n, rng)
        if n == 2:
            checks['two_qubit_negativity'] = self._two_qubit_negativity
        if n == 3:
            checks['n3_consistency'] = self._n3_consistency
        if n == 4:
            checks['sum_rule'] = lambda rng: sum_rule_residual(random_state(4, rng))
            checks['complement_symmetry'] = lambda rng: complement_residual(random_state(4, rng))
        if n == 5:
            checks['n5_consistency'] = self._n5_consistency

        results = []
        for name, check in checks.items():
            devs = [check(self.trial_rng(f"{name}:{n}", trial)) for trial in range(trials)]
            results.append(self.make_result(name, devs, trials, name, COVERAGE[name], n))
            log.debug(f"  {name} (n={n}): done")
        return results

    def _decomposition(self, n: int, rng: np.random.Generator) -> float:
        state = random_state(n, rng)
        return max(decomposition_residual(state, p) for p in range(1, n + 1))

    def _font_eigenvalue(self, n: int, rng: np.random.Generator) -> float:
        state = random_state(n, rng)
        p = int(rng.integers(1, n + 1))
        K = int(rng.integers(2, n + 1))
        specs = enumerate_fonts(n, p, K)
        spec = specs[int(rng.integers(len(specs)))]
        lowest, expected = font_submatrix_min_eig(state, p, spec)
        return abs(lowest - expected)

    def _sign_relations(self, n: int, rng: np.random.Generator) -> float:
        state = random_state(n, rng)
        p = int(rng.integers(1, n + 1))
        bits = tuple(int(b) for b in rng.integers(0, 2, size=n))
        spec = FontSpec(n=n, p=p, vary=tuple(range(1, n + 1)), bits=bits)
        return sign_relations_deviation(state, spec)

    def _transformation(self, n: int, rng: np.random.Generator) -> float:
        state = random_state(n, rng)
        q = int(rng.integers(2, n + 1))
        x = _random_complex(rng)
        primed = transform_fonts(state, q, x)
        direct = transform_fonts_direct(state, q, x)
        return max(abs(primed[key] - direct[key]) for key in primed)

    def _pairwise_orbit(self, n: int, rng: np.random.Generator) -> float:
        state = random_state(n, rng)
        q = int(rng.integers(2, n + 1))
        rest = ''.join(str(int(b)) for b in rng.integers(0, 2, size=n - 2))
        before = pairwise_unitary_invariants(state, 1, q, rest)
        moved = apply_local_unitary(state, LocalUnitary.from_x(_random_complex(rng), qubit=1))
        moved = apply_local_unitary(moved, LocalUnitary.from_x(_random_complex(rng), qubit=q))
        after = pairwise_unitary_invariants(moved, 1, q, rest)
        return max(abs(a - b) for a, b in zip(after, before))

    def _subset_invariance(self, n: int, rng: np.random.Generator) -> float:
        state = random_state(n, rng)
        size = int(rng.integers(2, n))
        others = rng.permutation(np.arange(2, n + 1))
        qubits = [1] + [int(m) for m in others[:size - 1]]
        summed = [int(m) for m in others[size - 1:] if rng.integers(2)]
        before = subset_invariant(state, qubits, summed)
        moved = apply_local_unitaries(state, [haar_su2(rng, q) for q in qubits])
        return abs(subset_invariant(moved, qubits, summed) - before)

    def _odd_vanishing(self, n: int, rng: np.random.Generator) -> float:
        state = random_state(n, rng)
        return max(vanish_odd_check(state, p) for p in range(1, n + 1))

    def _two_qubit_negativity(self, rng: np.random.Generator) -> float:
        state = random_state(2, rng)
        det = font_det(state, FontSpec(n=2, p=1, vary=(1, 2), bits=(0, 0)))
        return abs(global_negativity(state, 1) ** 2 - 4 * abs(det) ** 2)

    def _n3_consistency(self, rng: np.random.Generator) -> float:
        state = random_state(3, rng)
        return abs(i_n_odd_pair(state, 1, 3) - tau3_bracket(state))

    def _n5_consistency(self, rng: np.random.Generator) -> float:
        state = random_state(5, rng)
        p, q = (int(m) for m in rng.choice(np.arange(1, 6), size=2, replace=False))
        return abs(i5_pair(state, p, q) - i_n_odd_pair(state, p, q))

    # === Exact values ===

    def benchmark_suite(self) -> List[CheckResult]:
        """Named states against their exact invariant values (one row per state)."""
        results = []
        for label, generator, n, expected in BENCHMARKS:
            report = full_report(named_state(generator, n))
            devs = [abs(report[key] - value) for key, value in expected.items()]
            # monotones stay within [0, 1] on these states
            for key in report.names():
                if key.startswith(('tau', 'beta_', 'negativity_')):
                    value = float(report[key])
                    devs.append(max(value - 1.0, 0.0, -value))
            result = self.make_result(f"benchmark:{label}", devs, 1, 'benchmark',
                                      COVERAGE['benchmark'], n)
            result.seed = None
            results.append(result)
        return results

    # === Aggregation ===

    def run_all(self, n: int, trials: int, benchmarks: bool = True) -> List[CheckResult]:
        log.info(f"Running invariance suite (n={n}, trials={trials}, seed={self.seed})...")
        results = self.lu_invariance_suite(n, trials)
        log.info(f"Running identity suite (n={n}, trials={trials}, seed={self.seed})...")
        results += self.identity_suite(n, trials)
        if benchmarks:
            log.info("Running benchmark suite...")
            results += self.benchmark_suite()
        return results

    def results_dataframe(self, results: List[CheckResult]) -> pd.DataFrame:
        return self.create_dataframe([r.to_dict() for r in results], CHECK_COLUMNS)


def all_passed(results: List[CheckResult]) -> bool:
    return all(r.passed for r in results)
