"""
Negativity fonts: 2x2 amplitude minors and their determinants.

A font w.r.t. target qubit p is fixed by the set of varying qubits V
(p in V, |V| = K), the bits of the spectator qubits outside V, and the
superscript bits of the qubits in V. With i the index carrying those bits
and j = i with every V bit flipped, the font is

    [[a_i,          a_(j, p from i)],
     [a_(i, p from j), a_j         ]]

and D is its determinant. Flipping the p superscript, or every other
superscript in V, negates D; canonical fonts have both the p bit and the
bit of the smallest other member of V set to 0.
"""

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .state import LocalUnitary, PureState, apply_local_unitary
from ..utils.constants import ALGEBRAIC_TOL, CENSUS_TOL
from ..utils.helpers import (
    bits_to_index,
    index_to_bits,
    indices_with_fixed_bits,
    qubit_mask,
    qubits_mask,
)


class FontSpecError(ValueError):
    """Raised for inconsistent font labels or out-of-range qubits."""
    pass


@dataclass(frozen=True)
class FontSpec:
    """Label of one negativity font.

    bits holds the full n-bit pattern of the reference index i: superscript
    bits on the varying qubits, fixed bits on the spectators.
    """
    n: int
    p: int
    vary: Tuple[int, ...]
    bits: Tuple[int, ...]

    def __post_init__(self):
        vary = tuple(sorted(int(m) for m in self.vary))
        object.__setattr__(self, 'vary', vary)
        object.__setattr__(self, 'bits', tuple(int(b) for b in self.bits))
        if len(set(vary)) != len(vary):
            raise FontSpecError(f"repeated qubit in varying set {vary}")
        if not 2 <= len(vary) <= self.n:
            raise FontSpecError(f"font needs 2 <= K <= n, got K={len(vary)} for n={self.n}")
        if any(not 1 <= m <= self.n for m in vary):
            raise FontSpecError(f"varying qubits {vary} out of range for n={self.n}")
        if self.p not in vary:
            raise FontSpecError(f"target qubit {self.p} not in varying set {vary}")
        if len(self.bits) != self.n or any(b not in (0, 1) for b in self.bits):
            raise FontSpecError(f"bits must be {self.n} values of 0/1, got {self.bits}")

    # --- constructors ---

    @classmethod
    def from_superscript(cls, n: int, p: int, sup: Union[str, Sequence[int]],
                         spectators: Optional[Mapping[int, int]] = None) -> 'FontSpec':
        """
        Write a font the way formulas print it.

        Args:
            n: Qubit count
            p: Target qubit
            sup: Superscript bits over the varying qubits in increasing order
            spectators: Map of spectator qubit -> fixed bit; the varying set is the rest

        Example:
            FontSpec.from_superscript(4, 1, "00", {3: 0, 4: 1}) is D_(A3)0(A4)1^00
        """
        spectators = dict(spectators or {})
        sup_bits = [int(c) for c in sup]
        vary = [m for m in range(1, n + 1) if m not in spectators]
        if len(sup_bits) != len(vary):
            raise FontSpecError(
                f"superscript {sup!r} has {len(sup_bits)} bits for {len(vary)} varying qubits"
            )
        bits = [0] * n
        for m, b in zip(vary, sup_bits):
            bits[m - 1] = b
        for m, b in spectators.items():
            if not 1 <= m <= n:
                raise FontSpecError(f"spectator qubit {m} out of range for n={n}")
            bits[m - 1] = int(b)
        return cls(n=n, p=p, vary=tuple(vary), bits=tuple(bits))

    @classmethod
    def from_indices(cls, n: int, p: int, i: int, j: int) -> 'FontSpec':
        """Font connecting basis indices i and j (their differing qubits vary)."""
        diff = index_to_bits(i ^ j, n)
        vary = tuple(m for m in range(1, n + 1) if diff[m - 1])
        return cls(n=n, p=p, vary=vary, bits=index_to_bits(i, n))

    # --- derived ---

    @property
    def K(self) -> int:
        return len(self.vary)

    @property
    def sup(self) -> Tuple[int, ...]:
        return tuple(self.bits[m - 1] for m in self.vary)

    @property
    def spectators(self) -> Dict[int, int]:
        return {m: self.bits[m - 1] for m in range(1, self.n + 1) if m not in self.vary}

    @property
    def index(self) -> int:
        return bits_to_index(self.bits)

    @property
    def vary_mask(self) -> int:
        return qubits_mask(self.vary, self.n)

    @property
    def p_mask(self) -> int:
        return qubit_mask(self.p, self.n)

    @property
    def partner(self) -> int:
        """Smallest varying qubit other than p."""
        return min(m for m in self.vary if m != self.p)

    def flip(self, *qubits: int) -> 'FontSpec':
        bits = list(self.bits)
        for m in qubits:
            bits[m - 1] ^= 1
        return FontSpec(n=self.n, p=self.p, vary=self.vary, bits=tuple(bits))

    def is_canonical(self) -> bool:
        return self.bits[self.p - 1] == 0 and self.bits[self.partner - 1] == 0

    def canonical(self) -> Tuple['FontSpec', int]:
        """(canonical spec, sign) with font_det(self) = sign * font_det(canonical spec)."""
        spec, sign = self, 1
        if spec.bits[spec.p - 1]:
            spec, sign = spec.flip(spec.p), -sign
        if spec.bits[spec.partner - 1]:
            spec, sign = spec.flip(*[m for m in spec.vary if m != spec.p]), -sign
        return spec, sign

    def label(self) -> str:
        """Printed label, e.g. D_(A3)0(A4)1^00."""
        subs = ''.join(f"(A{m}){b}" for m, b in sorted(self.spectators.items()))
        sup = ''.join(str(b) for b in self.sup)
        return f"D_{subs}^{sup}" if subs else f"D^{sup}"


def _check_spec(state: PureState, spec: FontSpec) -> None:
    if spec.n != state.n:
        raise FontSpecError(f"font for {spec.n} qubits applied to a {state.n}-qubit state")


def font_matrix(state: PureState, spec: FontSpec) -> np.ndarray:
    """The 2x2 font of `spec` in `state`."""
    _check_spec(state, spec)
    a = state.amp
    i, mv, mp = spec.index, spec.vary_mask, spec.p_mask
    return np.array([[a[i], a[i ^ mv ^ mp]],
                     [a[i ^ mp], a[i ^ mv]]], dtype=np.complex128)


def font_det(state: PureState, spec: FontSpec) -> complex:
    """Determinant D of the font (canonical or not)."""
    _check_spec(state, spec)
    a = state.amp
    i, mv, mp = spec.index, spec.vary_mask, spec.p_mask
    return complex(a[i] * a[i ^ mv] - a[i ^ mv ^ mp] * a[i ^ mp])


def font_dets(amp: np.ndarray, n: int, p: int, vary: Sequence[int],
              indices: np.ndarray) -> np.ndarray:
    """Vectorised D for reference indices `indices` sharing one varying set."""
    mv = qubits_mask(vary, n)
    mp = qubit_mask(p, n)
    return amp[indices] * amp[indices ^ mv] - amp[indices ^ mv ^ mp] * amp[indices ^ mp]


def _check_range(n: int, p: int, K: int) -> None:
    if not 1 <= p <= n:
        raise FontSpecError(f"target qubit {p} out of range for n={n}")
    if not 2 <= K <= n:
        raise FontSpecError(f"K must satisfy 2 <= K <= n, got K={K} for n={n}")


def canonical_count(n: int, K: int) -> int:
    return comb(n - 1, K - 1) * 2 ** (n - K) * 2 ** (K - 2)


def enumerate_fonts(n: int, p: int, K: int) -> List[FontSpec]:
    """All canonical K-way fonts w.r.t. p, without duplicates."""
    _check_range(n, p, K)
    others = [m for m in range(1, n + 1) if m != p]
    specs = []
    for chosen in combinations(others, K - 1):
        vary = tuple(sorted((p,) + chosen))
        r0 = min(chosen)
        free = [m for m in range(1, n + 1) if m not in (p, r0)]
        for values in product((0, 1), repeat=len(free)):
            bits = [0] * n
            for m, b in zip(free, values):
                bits[m - 1] = b
            specs.append(FontSpec(n=n, p=p, vary=vary, bits=tuple(bits)))
    return specs


def sign_relations_check(state: PureState, spec: FontSpec, tol: float = ALGEBRAIC_TOL) -> bool:
    """D flips sign when the p superscript flips, and when every other varying bit flips."""
    d = font_det(state, spec)
    flip_p = font_det(state, spec.flip(spec.p))
    flip_rest = font_det(state, spec.flip(*[m for m in spec.vary if m != spec.p]))
    return abs(d + flip_p) <= tol and abs(d + flip_rest) <= tol


def sign_relations_deviation(state: PureState, spec: FontSpec) -> float:
    d = font_det(state, spec)
    flip_p = font_det(state, spec.flip(spec.p))
    flip_rest = font_det(state, spec.flip(*[m for m in spec.vary if m != spec.p]))
    return max(abs(d + flip_p), abs(d + flip_rest))


def font_census(state: PureState, p: int, K: int, tol: float = CENSUS_TOL) -> int:
    """Number of canonical K-way fonts w.r.t. p with |D| > tol."""
    n = state.n
    _check_range(n, p, K)
    others = [m for m in range(1, n + 1) if m != p]
    count = 0
    for chosen in combinations(others, K - 1):
        vary = (p,) + chosen
        indices = indices_with_fixed_bits(n, {p: 0, min(chosen): 0})
        dets = font_dets(state.amp, n, p, vary, indices)
        count += int(np.count_nonzero(np.abs(dets) > tol))
    return count


# === Single-qubit transformation of fonts ===

def _transform_keys(n: int, p: int, q: int) -> List[Tuple[FontSpec, FontSpec, FontSpec, FontSpec]]:
    """
    For every bit pattern r on the qubits other than p and q (p bit 0):
    (N-way with q=0, N-way with q=1, (N-1)-way spectator q=0, (N-1)-way spectator q=1).
    """
    if n < 3:
        raise FontSpecError(f"transformation equations need n >= 3, got n={n}")
    if not 1 <= p <= n or not 1 <= q <= n:
        raise FontSpecError(f"qubits p={p}, q={q} out of range for n={n}")
    if q == p:
        raise FontSpecError("transformed qubit q must differ from target qubit p")
    full = tuple(range(1, n + 1))
    reduced = tuple(m for m in full if m != q)
    rest = [m for m in full if m not in (p, q)]
    groups = []
    for values in product((0, 1), repeat=len(rest)):
        bits = [0] * n
        for m, b in zip(rest, values):
            bits[m - 1] = b
        with_q = []
        for d in (0, 1):
            b = list(bits)
            b[q - 1] = d
            with_q.append(tuple(b))
        groups.append((
            FontSpec(n=n, p=p, vary=full, bits=with_q[0]),
            FontSpec(n=n, p=p, vary=full, bits=with_q[1]),
            FontSpec(n=n, p=p, vary=reduced, bits=with_q[0]),
            FontSpec(n=n, p=p, vary=reduced, bits=with_q[1]),
        ))
    return groups


def transform_fonts(state: PureState, q: int, x: complex, p: int = 1) -> Dict[FontSpec, complex]:
    """
    Primed font determinants after U(x) on qubit q, from unprimed ones only.

    With D0, D1 the N-way fonts with q bit 0/1 and E0, E1 the (N-1)-way
    fonts with spectator q fixed to 0/1 (same remaining bits), all over
    1 + |x|^2:

        D0' = D0 - |x|^2 D1 + x E0 - x* E1
        D1' = D1 - |x|^2 D0 + x E0 - x* E1
        E0' = E0 - x* (D0 + D1) + x*^2 E1
        E1' = E1 + x (D0 + D1) + x^2 E0

    The E0' rule carries -x* on (D0 + D1); this sign was fixed by comparing
    against transform_fonts_direct, and the transformation_equations check
    keeps the two in agreement.
    """
    x = complex(x)
    xc = x.conjugate()
    ax2 = abs(x) ** 2
    scale = 1.0 + ax2
    primed: Dict[FontSpec, complex] = {}
    for k0, k1, e0_spec, e1_spec in _transform_keys(state.n, p, q):
        d0 = font_det(state, k0)
        d1 = font_det(state, k1)
        e0 = font_det(state, e0_spec)
        e1 = font_det(state, e1_spec)
        primed[k0] = (d0 - ax2 * d1 + x * e0 - xc * e1) / scale
        primed[k1] = (d1 - ax2 * d0 + x * e0 - xc * e1) / scale
        primed[e0_spec] = (e0 - xc * (d0 + d1) + xc * xc * e1) / scale
        primed[e1_spec] = (e1 + x * (d0 + d1) + x * x * e0) / scale
    return primed


def transform_fonts_direct(state: PureState, q: int, x: complex, p: int = 1) -> Dict[FontSpec, complex]:
    """Same keys as transform_fonts, evaluated on the transformed amplitudes."""
    moved = apply_local_unitary(state, LocalUnitary.from_x(x, qubit=q))
    out: Dict[FontSpec, complex] = {}
    for group in _transform_keys(state.n, p, q):
        for spec in group:
            out[spec] = font_det(moved, spec)
    return out


def pairwise_unitary_invariants(state: PureState, p: int, q: int,
                                sup_rest: Union[str, Sequence[int]] = ()) -> Tuple[complex, complex, complex]:
    """
    Combinations of fonts left unchanged by determinant-1 unitaries on p and q.

    Args:
        state: Input state (n >= 3)
        p: Target qubit
        q: Second qubit
        sup_rest: Bits of the remaining qubits in increasing order (default all 0)

    Returns:
        (D0 - D1, (D0 + D1)^2 - 4 E0 E1, D0 D1 - E0 E1)
    """
    n = state.n
    if p == q:
        raise FontSpecError("pairwise invariants need p != q")
    if n < 3:
        raise FontSpecError(f"pairwise invariants need n >= 3, got n={n}")
    rest = [m for m in range(1, n + 1) if m not in (p, q)]
    bits_rest = [int(c) for c in sup_rest] if len(sup_rest) else [0] * len(rest)
    if len(bits_rest) != len(rest):
        raise FontSpecError(f"expected {len(rest)} remaining bits, got {len(bits_rest)}")
    bits = [0] * n
    for m, b in zip(rest, bits_rest):
        bits[m - 1] = b
    full = tuple(range(1, n + 1))
    reduced = tuple(m for m in full if m != q)
    values = []
    for vary in (full, reduced):
        for d in (0, 1):
            b = list(bits)
            b[q - 1] = d
            values.append(font_det(state, FontSpec(n=n, p=p, vary=vary, bits=tuple(b))))
    d0, d1, e0, e1 = values
    return d0 - d1, (d0 + d1) ** 2 - 4 * e0 * e1, d0 * d1 - e0 * e1
