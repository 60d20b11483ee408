"""tanglekit computation engines."""

from .state import (
    PureState,
    LocalUnitary,
    QubitIndex,
    InvalidStateError,
    named_state,
    apply_local_unitary,
    apply_permutation,
    random_state,
    haar_su2,
    haar_u2,
)
from .fonts import FontSpec, FontSpecError, font_det, font_matrix, enumerate_fonts
from .transpose import TransposedMatrix, TransposeError, global_pt, kway_pt, negativity
from .invariants import InvariantReport, InvariantEngine, InvariantError, full_report, subset_invariant

__all__ = [
    'PureState',
    'LocalUnitary',
    'QubitIndex',
    'InvalidStateError',
    'named_state',
    'apply_local_unitary',
    'apply_permutation',
    'random_state',
    'haar_su2',
    'haar_u2',
    'FontSpec',
    'FontSpecError',
    'font_det',
    'font_matrix',
    'enumerate_fonts',
    'TransposedMatrix',
    'TransposeError',
    'global_pt',
    'kway_pt',
    'negativity',
    'InvariantReport',
    'InvariantEngine',
    'InvariantError',
    'full_report',
    'subset_invariant',
]
