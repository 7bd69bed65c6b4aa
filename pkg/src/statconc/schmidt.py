"""Entanglement entropy of pure states across the Alice/Bob mode split.

The canonical mode order puts all of Alice's modes before Bob's, so every
basis configuration factors as (Alice string)(Bob string)|0> with no
statistics sign ambiguity at the cut.  The coefficient matrix over distinct
part labels is small throughout the protocol (a handful of branches), so a
dense SVD is used.
"""

from __future__ import annotations

import numpy as np

from .fock import FockError, Party, SparseState

_NORM_TOL = 1e-9
_WEIGHT_FLOOR = 1e-15


class NotNormalizedError(FockError):
    """Entropy is only defined here for unit-norm pure states."""


def entanglement_entropy(state: SparseState, party: Party = Party.ALICE) -> float:
    """Schmidt entropy in ebits (base-2) across `party` vs the rest."""
    nsq = state.norm_squared()
    if abs(nsq - 1.0) > _NORM_TOL:
        raise NotNormalizedError("state norm^2 = %.6g, expected 1" % nsq)

    left_index: dict = {}
    right_index: dict = {}
    entries = []
    for occ, amp in state.terms.items():
        left = tuple(e for e in occ if e[0].party is party)
        right = tuple(e for e in occ if e[0].party is not party)
        i = left_index.setdefault(left, len(left_index))
        j = right_index.setdefault(right, len(right_index))
        entries.append((i, j, amp))

    matrix = np.zeros((len(left_index), len(right_index)), dtype=complex)
    for i, j, amp in entries:
        matrix[i, j] = amp
    singular = np.linalg.svd(matrix, compute_uv=False)
    weights = singular**2
    weights = weights / weights.sum()
    weights = weights[weights > _WEIGHT_FLOOR]
    return float(-(weights * np.log2(weights)).sum())
