"""
Pytest configuration and shared fixtures for tanglekit tests.
"""
import pytest
import sys
from pathlib import Path

import numpy as np

# Add repo root to path so 'from tanglekit.' finds the package
sys.path.insert(0, str(Path(__file__).parent.parent))

from tanglekit.engines.state import named_state, random_state
from tanglekit.utils import log


@pytest.fixture(autouse=True)
def reset_logging():
    """Keep global log switches from leaking between tests."""
    log.set_verbosity(False)
    log.set_quiet(False)
    log.set_log_file(None)
    yield
    log.set_verbosity(False)
    log.set_quiet(False)
    log.set_log_file(None)


@pytest.fixture(autouse=True)
def clear_seed_env(monkeypatch):
    """Tests run with the default seed unless they set one."""
    monkeypatch.delenv('TANGLEKIT_SEED', raising=False)


@pytest.fixture
def ghz3():
    return named_state('ghz', 3)


@pytest.fixture
def ghz4():
    return named_state('ghz', 4)


@pytest.fixture
def ghz5():
    return named_state('ghz', 5)


@pytest.fixture
def w3():
    return named_state('w', 3)


@pytest.fixture
def w4():
    return named_state('w', 4)


@pytest.fixture
def chi():
    return named_state('chi', 4)


@pytest.fixture
def bell():
    return named_state('bell', 2)


@pytest.fixture
def bell_pairs4():
    return named_state('bell_pairs', 4)


@pytest.fixture
def zero4():
    """Product basis state |0000>."""
    return named_state('basis', 4, index=0)


@pytest.fixture
def random_states():
    """Factory: list of seeded random states of n qubits."""
    def make(n, count, seed=1234):
        rng = np.random.default_rng(seed)
        return [random_state(n, rng) for _ in range(count)]
    return make


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def write_state_file(tmp_path):
    """Write raw text to a state file and return its path."""
    def write(text, name='state.json'):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return write
