"""
Pure N-qubit states, single-qubit unitaries, and seeded sampling.

Amplitudes are dense complex vectors of length 2**n. Qubit 1 is the most
significant bit of the linear index (see utils.helpers).
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..utils import log
from ..utils.constants import CHI_KETS, MAX_QUBITS, NAMED_STATES, NORM_TOL, UNITARY_TOL
from ..utils.helpers import bits_to_index, index_to_bits, qubit_mask

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


class InvalidStateError(ValueError):
    """Raised when a state, unitary, or permutation is malformed."""
    pass


def _check_qubit_count(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUBITS:
        raise InvalidStateError(f"qubit count must be in [1, {MAX_QUBITS}], got {n!r}")


@dataclass(frozen=True)
class QubitIndex:
    """Bit tuple of a basis ket, qubit 1 first."""
    bits: Tuple[int, ...]

    def __post_init__(self):
        if not self.bits or any(b not in (0, 1) for b in self.bits):
            raise InvalidStateError(f"bits must be a non-empty tuple of 0/1, got {self.bits!r}")

    @classmethod
    def from_index(cls, idx: int, n: int) -> 'QubitIndex':
        try:
            return cls(index_to_bits(idx, n))
        except ValueError as e:
            raise InvalidStateError(str(e)) from e

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        return bits_to_index(self.bits)

    def flip(self, *qubits: int) -> 'QubitIndex':
        """Flip the bits of the given qubits."""
        bits = list(self.bits)
        for m in qubits:
            bits[m - 1] ^= 1
        return QubitIndex(tuple(bits))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state of n qubits."""
    n: int
    amp: np.ndarray
    source: str = ""
    norm_deviation: float = 0.0

    def __post_init__(self):
        _check_qubit_count(self.n)
        amp = np.array(self.amp, dtype=np.complex128).ravel()
        if amp.shape[0] != 1 << self.n:
            raise InvalidStateError(
                f"expected {1 << self.n} amplitudes for {self.n} qubits, got {amp.shape[0]}"
            )
        norm_sq = float(np.vdot(amp, amp).real)
        if not abs(norm_sq - 1.0) <= NORM_TOL:
            raise InvalidStateError(
                f"state is not normalized (|norm^2 - 1| = {abs(norm_sq - 1.0):.3e}); "
                f"use PureState.from_amplitudes to normalize"
            )
        amp.setflags(write=False)
        object.__setattr__(self, 'amp', amp)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex], source: str = "",
                        normalize: bool = True) -> 'PureState':
        """
        Build a state from a flat amplitude sequence.

        Args:
            amplitudes: 2**n complex amplitudes ordered by linear index
            source: Free-form provenance label
            normalize: Rescale to unit norm (warns when the input was off by more than NORM_TOL)

        Returns:
            PureState

        Raises:
            InvalidStateError: If the length is not a power of two, the norm is zero,
                or normalize is False and the norm is off by more than NORM_TOL
        """
        amp = np.array(amplitudes, dtype=np.complex128).ravel()
        size = amp.shape[0]
        if size < 2 or size & (size - 1):
            raise InvalidStateError(f"amplitude count must be a power of two >= 2, got {size}")
        n = size.bit_length() - 1

        norm_sq = float(np.vdot(amp, amp).real)
        if norm_sq == 0.0 or not np.isfinite(norm_sq):
            raise InvalidStateError("state has zero or non-finite norm")
        deviation = abs(norm_sq - 1.0)
        if normalize:
            if deviation > NORM_TOL:
                label = f" ({source})" if source else ""
                log.warn(f"state{label} not normalized (|norm^2 - 1| = {deviation:.3e}); normalizing")
            amp = amp / np.sqrt(norm_sq)
        return cls(n=n, amp=amp, source=source, norm_deviation=deviation)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def tensor(self) -> np.ndarray:
        """Amplitudes as an n-axis (2, 2, ..., 2) array, axis m-1 is qubit m."""
        return self.amp.reshape((2,) * self.n)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amp, self.amp).real))

    def amplitude(self, bits: Sequence[int]) -> complex:
        """Amplitude of the ket with the given bits."""
        if len(bits) != self.n:
            raise InvalidStateError(f"expected {self.n} bits, got {len(bits)}")
        return complex(self.amp[bits_to_index(bits)])

    def with_source(self, source: str) -> 'PureState':
        return PureState(n=self.n, amp=self.amp, source=source, norm_deviation=self.norm_deviation)


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    """A 2x2 unitary acting on one qubit."""
    qubit: int
    u: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=np.complex128))

    def __post_init__(self):
        if not isinstance(self.qubit, (int, np.integer)) or self.qubit < 1:
            raise InvalidStateError(f"qubit must be a positive integer, got {self.qubit!r}")
        u = np.array(self.u, dtype=np.complex128)
        if u.shape != (2, 2):
            raise InvalidStateError(f"unitary must be 2x2, got shape {u.shape}")
        if np.max(np.abs(u.conj().T @ u - np.eye(2))) > UNITARY_TOL:
            raise InvalidStateError("matrix is not unitary within tolerance")
        u.setflags(write=False)
        object.__setattr__(self, 'u', u)

    @classmethod
    def from_x(cls, x: complex, qubit: int = 1) -> 'LocalUnitary':
        """U(x) = [[1, -x*], [x, 1]] / sqrt(1 + |x|^2); from_x(0) is the identity."""
        x = complex(x)
        scale = 1.0 / np.sqrt(1.0 + abs(x) ** 2)
        u = np.array([[1.0, -x.conjugate()], [x, 1.0]], dtype=np.complex128) * scale
        return cls(qubit=qubit, u=u)

    @classmethod
    def identity(cls, qubit: int = 1) -> 'LocalUnitary':
        return cls(qubit=qubit, u=np.eye(2, dtype=np.complex128))

    def det(self) -> complex:
        return complex(np.linalg.det(self.u))

    def is_special(self, tol: float = UNITARY_TOL) -> bool:
        """True when det(u) = 1 within tol."""
        return abs(self.det() - 1.0) <= tol


# === Named states ===

def _ket(n: int, bits: str) -> int:
    if len(bits) != n:
        raise InvalidStateError(f"ket {bits!r} does not have {n} qubits")
    return int(bits, 2)


def named_state(name: str, n: int, index: Optional[int] = None) -> PureState:
    """
    Build one of the named benchmark states.

    Args:
        name: ghz, w, bell, chi, basis, or bell_pairs
        n: Qubit count
        index: Basis index (basis only)

    Returns:
        PureState with source set to the name

    Raises:
        InvalidStateError: Unknown name or incompatible n
    """
    _check_qubit_count(n)
    dim = 1 << n
    amp = np.zeros(dim, dtype=np.complex128)
    key = name.lower()

    if key == 'ghz':
        if n < 2:
            raise InvalidStateError("ghz requires n >= 2")
        amp[0] = amp[dim - 1] = np.sqrt(0.5)
    elif key == 'w':
        if n < 2:
            raise InvalidStateError("w requires n >= 2")
        for m in range(1, n + 1):
            amp[qubit_mask(m, n)] = np.sqrt(1.0 / n)
    elif key == 'bell':
        if n != 2:
            raise InvalidStateError("bell requires n = 2")
        amp[0] = amp[3] = np.sqrt(0.5)
    elif key == 'chi':
        if n != 4:
            raise InvalidStateError("chi requires n = 4")
        for bits, sign in CHI_KETS:
            amp[_ket(4, bits)] = sign / np.sqrt(8.0)
    elif key == 'basis':
        if index is None:
            raise InvalidStateError("basis requires an index")
        if not 0 <= index < dim:
            raise InvalidStateError(f"basis index {index} out of range for {n} qubits")
        amp[index] = 1.0
        return PureState(n=n, amp=amp, source=f"basis[{index}]")
    elif key == 'bell_pairs':
        if n % 2:
            raise InvalidStateError("bell_pairs requires even n")
        return tensor_product(*[named_state('bell', 2) for _ in range(n // 2)]).with_source('bell_pairs')
    else:
        raise InvalidStateError(f"unknown state name: {name!r} (known: {', '.join(NAMED_STATES)})")

    return PureState(n=n, amp=amp, source=key)


def tensor_product(*states: PureState) -> PureState:
    """Product state; qubits of later factors follow those of earlier ones."""
    if not states:
        raise InvalidStateError("tensor_product needs at least one state")
    amp = states[0].amp
    for s in states[1:]:
        amp = np.kron(amp, s.amp)
    n = sum(s.n for s in states)
    _check_qubit_count(n)
    return PureState(n=n, amp=amp, source='x'.join(s.source or '?' for s in states))


# === Transformations ===

def apply_local_unitary(state: PureState, lu: LocalUnitary) -> PureState:
    """Apply lu.u to qubit lu.qubit."""
    if lu.qubit > state.n:
        raise InvalidStateError(f"qubit {lu.qubit} out of range for {state.n} qubits")
    axis = lu.qubit - 1
    res = np.tensordot(lu.u, state.tensor(), axes=([1], [axis]))
    res = np.moveaxis(res, 0, axis)
    return PureState(n=state.n, amp=res.reshape(-1), source=state.source,
                     norm_deviation=state.norm_deviation)


def apply_local_unitaries(state: PureState, unitaries: Sequence[LocalUnitary]) -> PureState:
    for lu in unitaries:
        state = apply_local_unitary(state, lu)
    return state


def _check_permutation(perm: Sequence[int], n: int) -> Tuple[int, ...]:
    perm = tuple(int(d) for d in perm)
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise InvalidStateError(f"not a permutation of 1..{n}: {perm!r}")
    return perm


def apply_permutation(state: PureState, perm: Sequence[int]) -> PureState:
    """
    Relabel qubits: source qubit m becomes qubit perm[m-1].

    The amplitude at the permuted bit tuple equals the original amplitude
    at the source tuple.
    """
    perm = _check_permutation(perm, state.n)
    axes = np.argsort(np.array(perm) - 1)
    res = np.transpose(state.tensor(), axes)
    return PureState(n=state.n, amp=res.reshape(-1), source=state.source,
                     norm_deviation=state.norm_deviation)


def inverse_permutation(perm: Sequence[int]) -> Tuple[int, ...]:
    perm = _check_permutation(perm, len(perm))
    inverse = [0] * len(perm)
    for source, dest in enumerate(perm, start=1):
        inverse[dest - 1] = source
    return tuple(inverse)


def relabel_permutation(n: int, front: Sequence[int], back: Sequence[int] = ()) -> Tuple[int, ...]:
    """
    Permutation sending `front` qubits to 1, 2, ..., `back` qubits to the
    last positions, and the remaining qubits in increasing order in between.
    """
    front, back = list(front), list(back)
    if len(set(front + back)) != len(front) + len(back):
        raise InvalidStateError(f"qubits repeated in relabeling: {front + back}")
    rest = [m for m in range(1, n + 1) if m not in front and m not in back]
    order = front + rest + back
    perm = [0] * n
    for dest, source in enumerate(order, start=1):
        perm[source - 1] = dest
    return tuple(perm)


# === Random sampling ===

def _rng(seed: SeedLike) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_state(n: int, seed: SeedLike = None) -> PureState:
    """Complex Gaussian amplitudes, normalized (uniform on the unit sphere)."""
    _check_qubit_count(n)
    rng = _rng(seed)
    dim = 1 << n
    amp = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    amp /= np.linalg.norm(amp)
    return PureState(n=n, amp=amp, source='random')


def _su2_matrix(rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal(4)
    g /= np.linalg.norm(g)
    alpha = complex(g[0], g[1])
    beta = complex(g[2], g[3])
    return np.array([[alpha, -beta.conjugate()], [beta, alpha.conjugate()]], dtype=np.complex128)


def haar_su2(seed: SeedLike = None, qubit: int = 1) -> LocalUnitary:
    """Haar-random determinant-1 unitary (uniform point on the 3-sphere)."""
    return LocalUnitary(qubit=qubit, u=_su2_matrix(_rng(seed)))


def haar_u2(seed: SeedLike = None, qubit: int = 1) -> LocalUnitary:
    """Haar-random unitary: haar_su2 times a uniform global phase."""
    rng = _rng(seed)
    u = _su2_matrix(rng)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    return LocalUnitary(qubit=qubit, u=u * np.exp(1j * phi))
