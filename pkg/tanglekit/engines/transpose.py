"""
Global and K-way partial transposes w.r.t. one qubit, and negativity.

The K-way transpose equals rho except on the elements whose bra and ket
differ at qubit p and in exactly K positions overall, which take their
partially transposed values. Elements differing only at p belong to the
K = 2 transpose, so that

    sum_{K=2..n} kway_pt(K) - (n - 2) rho == global_pt

holds elementwise.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .fonts import FontSpec, font_det
from .state import PureState
from ..utils.constants import HERMITIAN_TOL
from ..utils.helpers import hamming_weights, qubit_mask


class TransposeError(ValueError):
    """Raised for out-of-range qubits/K or non-Hermitian input."""
    pass


@dataclass(frozen=True, eq=False)
class TransposedMatrix:
    """A partially transposed density matrix.

    kind is 'global' or 'kway'; K is set for 'kway' only.
    """
    kind: str
    p: int
    m: np.ndarray
    K: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ('global', 'kway'):
            raise TransposeError(f"unknown transpose kind: {self.kind!r}")
        if self.kind == 'kway' and self.K is None:
            raise TransposeError("K-way transpose needs K")
        m = np.asarray(self.m, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise TransposeError(f"matrix must be square, got shape {m.shape}")
        _check_hermitian(m)
        trace = np.trace(m)
        if abs(trace - 1.0) > HERMITIAN_TOL:
            raise TransposeError(f"trace must be 1, got {trace:.3e}")
        object.__setattr__(self, 'm', m)

    @property
    def n(self) -> int:
        return self.m.shape[0].bit_length() - 1


def _check_hermitian(m: np.ndarray) -> None:
    deviation = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if deviation > HERMITIAN_TOL:
        raise TransposeError(f"matrix is not Hermitian (max deviation {deviation:.3e})")


def _check_qubit(state: PureState, p: int) -> None:
    if not 1 <= p <= state.n:
        raise TransposeError(f"qubit {p} out of range for {state.n} qubits")


def density_matrix(state: PureState) -> np.ndarray:
    return np.outer(state.amp, state.amp.conj())


def _transposed_elements(state: PureState, p: int) -> np.ndarray:
    """Every element of the partial transpose: bra and ket bits of p swapped."""
    n = state.n
    rho = density_matrix(state).reshape((2,) * (2 * n))
    return np.swapaxes(rho, p - 1, n + p - 1).reshape(state.dim, state.dim)


def global_pt(state: PureState, p: int) -> TransposedMatrix:
    """
    Partial transpose w.r.t. qubit p.

    Element (I, J) is a_(I with p from J) * conj(a_(J with p from I)).
    """
    _check_qubit(state, p)
    return TransposedMatrix(kind='global', p=p, m=_transposed_elements(state, p))


def kway_pt(state: PureState, p: int, K: int) -> TransposedMatrix:
    """K-way partial transpose w.r.t. qubit p (2 <= K <= n)."""
    _check_qubit(state, p)
    n = state.n
    if not 2 <= K <= n:
        raise TransposeError(f"K must satisfy 2 <= K <= n, got K={K} for n={n}")

    idx = np.arange(state.dim, dtype=np.uint16)
    diff = np.bitwise_xor.outer(idx, idx)
    distance = hamming_weights(n).astype(np.uint8)[diff]
    p_differs = (diff & qubit_mask(p, n)) != 0
    selected = p_differs & (distance == K)
    if K == 2:
        selected |= p_differs & (distance == 1)

    m = density_matrix(state)
    m[selected] = _transposed_elements(state, p)[selected]
    return TransposedMatrix(kind='kway', p=p, m=m, K=K)


def negativity(tm: Union[TransposedMatrix, np.ndarray]) -> float:
    """Trace norm minus one, from the Hermitian eigenvalues."""
    if isinstance(tm, TransposedMatrix):
        m = tm.m
    else:
        m = np.asarray(tm, dtype=np.complex128)
        _check_hermitian(m)
    eigenvalues = np.linalg.eigvalsh(m)
    return float(np.sum(np.abs(eigenvalues)) - 1.0)


def global_negativity(state: PureState, p: int) -> float:
    return negativity(global_pt(state, p))


def decomposition_residual(state: PureState, p: int) -> float:
    """Max elementwise |sum_K kway_pt - (n - 2) rho - global_pt|."""
    n = state.n
    total = np.zeros((state.dim, state.dim), dtype=np.complex128)
    for K in range(2, n + 1):
        total += kway_pt(state, p, K).m
    total -= (n - 2) * density_matrix(state)
    return float(np.max(np.abs(total - global_pt(state, p).m)))


def font_submatrix(state: PureState, spec: FontSpec) -> np.ndarray:
    """4x4 principal submatrix of global_pt on {i, j, i with p flipped, j with p flipped}."""
    a = state.amp
    mp = spec.p_mask
    i = spec.index
    j = i ^ spec.vary_mask
    basis = [i, j, i ^ mp, j ^ mp]
    sub = np.empty((4, 4), dtype=np.complex128)
    for r, row in enumerate(basis):
        for c, col in enumerate(basis):
            sub[r, c] = a[(row & ~mp) | (col & mp)] * np.conj(a[(col & ~mp) | (row & mp)])
    return sub


def font_submatrix_min_eig(state: PureState, p: int, spec: FontSpec) -> Tuple[float, float]:
    """(minimum eigenvalue of the font's 4x4 submatrix, -|D|); the two agree."""
    _check_qubit(state, p)
    if spec.p != p:
        raise TransposeError(f"font targets qubit {spec.p}, not {p}")
    if spec.n != state.n:
        raise TransposeError(f"font for {spec.n} qubits applied to a {state.n}-qubit state")
    lowest = float(np.linalg.eigvalsh(font_submatrix(state, spec))[0])
    return lowest, -abs(font_det(state, spec))
