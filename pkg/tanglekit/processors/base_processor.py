"""
Base class for randomized verification suites.
"""

import zlib
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from ..utils.constants import tolerance_for


CHECK_COLUMNS = ['name', 'passed', 'max_deviation', 'tolerance', 'trials', 'seed', 'n', 'anchor']


@dataclass
class CheckResult:
    """Outcome of one numerical check; passed iff max_deviation <= tolerance."""
    name: str
    trials: int
    max_deviation: float
    tolerance: float
    seed: Optional[int] = None
    anchor: str = ""
    n: Optional[int] = None
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_deviation = float(self.max_deviation)
        # NaN never passes
        self.passed = bool(self.max_deviation <= self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'max_deviation': self.max_deviation,
            'tolerance': self.tolerance,
            'trials': self.trials,
            'seed': self.seed,
            'n': self.n,
            'anchor': self.anchor,
        }


class BaseSuite:
    """Shared seeding, tolerance lookup, and tabulation for verification suites."""

    def __init__(self, seed: int = 0, tolerances: Optional[Dict[str, float]] = None):
        """
        Initialize suite.

        Args:
            seed: Master seed; every trial derives its own stream from it
            tolerances: Per-check overrides of DEFAULT_TOLERANCES
        """
        self.seed = seed
        self.tolerances = dict(tolerances or {})

    def tolerance(self, name: str) -> float:
        return tolerance_for(name, self.tolerances)

    def trial_rng(self, check: str, trial: int) -> np.random.Generator:
        """
        Generator for one trial of one check.

        Seeded from (master seed, trial index, check name) only, so results
        do not depend on the order in which trials run.
        """
        salt = zlib.crc32(check.encode('utf-8'))
        return np.random.default_rng(np.random.SeedSequence([self.seed, trial, salt]))

    def make_result(self, name: str, deviations: Iterable[float], trials: int,
                    tolerance_key: str, anchor: str = "", n: Optional[int] = None) -> CheckResult:
        """Aggregate per-trial deviations into a CheckResult (max; 0 when empty)."""
        worst = 0.0
        for d in deviations:
            d = float(d)
            if np.isnan(d):
                worst = float('nan')
                break
            worst = max(worst, d)
        return CheckResult(name=name, trials=trials, max_deviation=worst,
                           tolerance=self.tolerance(tolerance_key), seed=self.seed,
                           anchor=anchor, n=n)

    def create_dataframe(self, rows: List[Dict], columns: Optional[List[str]] = None) -> pd.DataFrame:
        """
        Create a DataFrame from rows with optional column ordering.

        Args:
            rows: List of row dictionaries
            columns: Optional list of column names for ordering

        Returns:
            pandas DataFrame
        """
        if not rows:
            return pd.DataFrame(columns=columns or [])

        df = pd.DataFrame(rows)

        if columns:
            existing_cols = [c for c in columns if c in df.columns]
            extra_cols = [c for c in df.columns if c not in columns]
            df = df[existing_cols + extra_cols]

        return df
