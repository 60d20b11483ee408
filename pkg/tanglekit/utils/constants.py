"""
Tolerances, configuration, and reference tables for tanglekit.
"""

import os
from typing import Dict, List, Optional, Tuple


# === Environment Configuration ===
SEED_ENV_VAR = "TANGLEKIT_SEED"


def default_seed() -> int:
    """Default master seed, taken from TANGLEKIT_SEED when it holds an integer."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return 0
    try:
        value = int(raw.strip())
    except ValueError:
        return 0
    return value if value >= 0 else 0


def seed_env_is_valid() -> bool:
    """True when TANGLEKIT_SEED is unset or a non-negative integer."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return True
    try:
        return int(raw.strip()) >= 0
    except ValueError:
        return False


# === Size Limits ===
MAX_QUBITS = 12
MAX_VERIFY_QUBITS = 6

# === Tolerance Ladder ===
NORM_TOL = 1e-8             # input normalization warning threshold
UNITARY_TOL = 1e-10         # u^dagger u = I check for LocalUnitary
HERMITIAN_TOL = 1e-12       # TransposedMatrix construction check
ALGEBRAIC_TOL = 1e-12       # identities on exactly representable amplitudes
IDENTITY_TOL = 1e-10        # identities on random states
ORBIT_TOL = 1e-9            # invariance along local unitary orbits
DECOMPOSITION_TOL = 1e-14   # K-way partial transpose decomposition
CENSUS_TOL = 1e-12          # |D| above which a font counts as present

# Per-check tolerances (overridable from the CLI with --tol NAME=VALUE)
DEFAULT_TOLERANCES: Dict[str, float] = {
    'lu_invariance_u2': ORBIT_TOL,
    'lu_invariance_su2': ORBIT_TOL,
    'negativity_lu': ORBIT_TOL,
    'decomposition': DECOMPOSITION_TOL,
    'font_eigenvalue': IDENTITY_TOL,
    'sign_relations': ALGEBRAIC_TOL,
    'transformation_equations': IDENTITY_TOL,
    'pairwise_orbit': IDENTITY_TOL,
    'subset_invariance': ORBIT_TOL,
    'sum_rule': IDENTITY_TOL,
    'odd_vanishing': ALGEBRAIC_TOL,
    'witness_independence': IDENTITY_TOL,
    'complement_symmetry': IDENTITY_TOL,
    'n3_consistency': IDENTITY_TOL,
    'n5_consistency': IDENTITY_TOL,
    'two_qubit_negativity': IDENTITY_TOL,
    'benchmark': ALGEBRAIC_TOL,
}

# === Named States ===
NAMED_STATES = ['ghz', 'w', 'bell', 'chi', 'basis', 'bell_pairs']
GENERATOR_NAMES = NAMED_STATES + ['random']

# Signed kets of the four-qubit chi state, amplitude sign * 1/sqrt(8)
CHI_KETS: List[Tuple[str, int]] = [
    ('0000', 1),
    ('1111', 1),
    ('0011', -1),
    ('1100', 1),
    ('1010', 1),
    ('0101', -1),
    ('0110', 1),
    ('1001', 1),
]

# === Report Keys ===
# Order in which report entries are listed; per-pair and per-qubit keys
# follow their family prefix in lexicographic order.
REPORT_KEY_ORDER = [
    'tau2',
    'tau3',
    'tau4',
    'tau5',
    'tauN',
    'IN',
    'I4',
    'J_',
    'beta_',
    'sum_rule_residual',
    'tauN_',
    'tau5_',
    'negativity_',
    'font_census',
]

# === Benchmark Table ===
# (benchmark name, generator name, n, expected entries)
THIRD = 1.0 / 3.0
BENCHMARKS: List[Tuple[str, str, int, Dict[str, float]]] = [
    ('ghz3', 'ghz', 3, {
        'tau3': 1.0,
        'tauN_13': 1.0,
    }),
    ('ghz4', 'ghz', 4, {
        'tau4': 1.0,
        'I4': 0.5,
        'J_12': 0.25, 'J_13': 0.25, 'J_14': 0.25,
        'J_23': 0.25, 'J_24': 0.25, 'J_34': 0.25,
        'beta_12': THIRD, 'beta_13': THIRD, 'beta_14': THIRD,
        'beta_23': THIRD, 'beta_24': THIRD, 'beta_34': THIRD,
        'sum_rule_residual': 0.0,
    }),
    ('ghz5', 'ghz', 5, {
        'tau5': 1.0,
    }),
    ('w3', 'w', 3, {
        'tau3': 0.0,
    }),
    ('w4', 'w', 4, {
        'tau4': 0.0,
    }),
    ('chi', 'chi', 4, {
        'tau4': 0.0,
        'I4': 0.0,
        'J_12': -0.25, 'J_13': -0.25, 'J_24': -0.25, 'J_34': -0.25,
        'J_14': 0.5, 'J_23': 0.5,
        'beta_12': THIRD, 'beta_13': THIRD, 'beta_24': THIRD, 'beta_34': THIRD,
        'beta_14': 2 * THIRD, 'beta_23': 2 * THIRD,
        'sum_rule_residual': 0.0,
    }),
    ('bell_x_bell', 'bell_pairs', 4, {
        'tau4': 1.0,
        'I4': 0.5,
        'J_12': 0.75, 'J_34': 0.75,
        'J_13': 0.0, 'J_14': 0.0, 'J_23': 0.0, 'J_24': 0.0,
        'sum_rule_residual': 0.0,
    }),
]

# === Output Configuration ===
TABLE_DIGITS = 12

EXCEL_COLORS = {
    'header_blue': '#1F4E79',
    'white': '#FFFFFF',
    'pass_green': '#C6EFCE',
    'fail_red': '#FFC7CE',
}


def tolerance_for(name: str, overrides: Optional[Dict[str, float]] = None) -> float:
    """Look up the tolerance for a check, honouring per-run overrides."""
    if overrides and name in overrides:
        return overrides[name]
    return DEFAULT_TOLERANCES[name]
