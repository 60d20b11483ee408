"""
Bit/index plumbing and formatting helpers.

Index convention: qubit 1 is the most significant bit of a linear index,
so the bit of qubit m in an n-qubit index is (idx >> (n - m)) & 1.
"""

from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from .constants import TABLE_DIGITS


def bits_to_index(bits: Sequence[int]) -> int:
    """Convert a bit tuple (qubit 1 first) to a linear index.

    Raises:
        ValueError: If any entry is not 0 or 1
    """
    idx = 0
    for position, bit in enumerate(bits):
        if bit not in (0, 1):
            raise ValueError(f"bit at position {position + 1} must be 0 or 1, got {bit!r}")
        idx = (idx << 1) | int(bit)
    return idx


def index_to_bits(idx: int, n: int) -> Tuple[int, ...]:
    """Convert a linear index to an n-bit tuple (qubit 1 first).

    Raises:
        ValueError: If idx is outside [0, 2**n)
    """
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    if not 0 <= idx < (1 << n):
        raise ValueError(f"index {idx} out of range for {n} qubits")
    return tuple((idx >> (n - m)) & 1 for m in range(1, n + 1))


def qubit_mask(m: int, n: int) -> int:
    """Bit mask of qubit m in an n-qubit index."""
    return 1 << (n - m)


def qubits_mask(qubits: Iterable[int], n: int) -> int:
    """Combined bit mask of several qubits."""
    mask = 0
    for m in qubits:
        mask |= qubit_mask(m, n)
    return mask


def bit_of(idx: Union[int, np.ndarray], m: int, n: int) -> Union[int, np.ndarray]:
    """Bit of qubit m in idx (works elementwise on integer arrays)."""
    return (idx >> (n - m)) & 1


def hamming_weights(n: int) -> np.ndarray:
    """Popcount of every index 0 .. 2**n - 1."""
    values = np.arange(1 << n, dtype=np.int64)
    weights = np.zeros(1 << n, dtype=np.int64)
    for shift in range(n):
        weights += (values >> shift) & 1
    return weights


def indices_with_fixed_bits(n: int, fixed: dict) -> np.ndarray:
    """All indices whose qubits in `fixed` hold the given bits, in increasing order."""
    values = np.arange(1 << n, dtype=np.int64)
    keep = np.ones(values.shape, dtype=bool)
    for m, bit in fixed.items():
        keep &= bit_of(values, m, n) == bit
    return values[keep]


def parity_signs(indices: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """(-1) ** (sum of the bits of `qubits`) for each index."""
    total = np.zeros(np.shape(indices), dtype=np.int64)
    for m in qubits:
        total += bit_of(indices, m, n)
    return 1 - 2 * (total % 2)


def pair_key(p: int, q: int) -> str:
    """Report key suffix for a qubit pair, e.g. (1, 4) -> '14'."""
    return f"{p}{q}"


def _format_float(value: float, digits: int) -> str:
    text = f"{value:.{digits}g}"
    if text.lstrip('-').isdigit():
        text += '.0'
    return text


def format_value(value: Union[complex, float, int], digits: int = TABLE_DIGITS) -> str:
    """Format a report value with `digits` significant digits (0.0 -> '0.0')."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag == 0.0:
            return _format_float(value.real, digits)
        sign = '+' if value.imag >= 0 else '-'
        return f"{_format_float(value.real, digits)}{sign}{_format_float(abs(value.imag), digits)}j"
    return _format_float(float(value), digits)


def complex_to_pair(value: complex) -> list:
    """JSON-friendly [re, im] pair."""
    value = complex(value)
    return [value.real, value.imag]
