"""
Reading and writing state files.

Format: {"n": int, "amplitudes": [[re, im], ...]} with 2**n entries ordered
by linear index (qubit 1 most significant).
"""

import json
import numbers
from pathlib import Path
from typing import Any, Dict, List, Union

from ..engines.state import InvalidStateError, PureState
from ..utils.constants import MAX_QUBITS


class StateParsingError(Exception):
    """Raised when a state file is malformed; the message names the offending field."""
    pass


def _is_number(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _parse_amplitude(entry: Any, position: int) -> complex:
    field = f"amplitudes[{position}]"
    if _is_number(entry):
        return complex(float(entry), 0.0)
    if not isinstance(entry, list) or len(entry) != 2:
        raise StateParsingError(f"{field}: expected [re, im], got {entry!r}")
    re, im = entry
    if not _is_number(re):
        raise StateParsingError(f"{field}[0]: expected a number, got {re!r}")
    if not _is_number(im):
        raise StateParsingError(f"{field}[1]: expected a number, got {im!r}")
    return complex(float(re), float(im))


def validate_state_data(data: Any) -> List[complex]:
    """
    Validate a decoded state document.

    Args:
        data: Decoded JSON value

    Returns:
        Amplitudes as complex numbers

    Raises:
        StateParsingError: If a field is missing or malformed
    """
    if not isinstance(data, dict):
        raise StateParsingError(f"top level: expected an object, got {type(data).__name__}")
    if 'n' not in data:
        raise StateParsingError("n: missing field")
    n = data['n']
    if not isinstance(n, int) or isinstance(n, bool):
        raise StateParsingError(f"n: expected an integer, got {n!r}")
    if not 1 <= n <= MAX_QUBITS:
        raise StateParsingError(f"n: must be in [1, {MAX_QUBITS}], got {n}")
    if 'amplitudes' not in data:
        raise StateParsingError("amplitudes: missing field")
    raw = data['amplitudes']
    if not isinstance(raw, list):
        raise StateParsingError(f"amplitudes: expected a list, got {type(raw).__name__}")
    if len(raw) != 1 << n:
        raise StateParsingError(f"amplitudes: expected {1 << n} entries for n={n}, got {len(raw)}")
    return [_parse_amplitude(entry, k) for k, entry in enumerate(raw)]


def parse_state_json(text: str, source: str = "") -> PureState:
    """Parse a state document; the state is normalized with a warning if needed."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateParsingError(f"malformed JSON (line {e.lineno}, column {e.colno}): {e.msg}") from e
    amplitudes = validate_state_data(data)
    try:
        return PureState.from_amplitudes(amplitudes, source=source)
    except InvalidStateError as e:
        raise StateParsingError(f"amplitudes: {e}") from e


def load_state_file(path: Union[str, Path]) -> PureState:
    """Read and parse a state file."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise StateParsingError(f"cannot read {path}: {e.strerror or e}") from e
    return parse_state_json(text, source=path.name)


def state_to_dict(state: PureState) -> Dict[str, Any]:
    return {
        'n': state.n,
        'amplitudes': [[float(a.real), float(a.imag)] for a in state.amp],
    }


def dump_state(state: PureState, path: Union[str, Path]) -> Path:
    """Write `state` in the state file format."""
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(state_to_dict(state), indent=2) + '\n', encoding='utf-8')
    return path
