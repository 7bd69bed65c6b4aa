"""Physical primitives acting on Bob's modes.

Three operations drive the concentration protocol: the spin flip applied in
the left input arm of each beam splitter, the 50/50 beam splitter itself,
and the path measurement at the two output detectors with post-selection.

Beam-splitter convention (default): the left arm maps to
(a+_L + a+_R)/sqrt(2) and the right arm to (a+_L - a+_R)/sqrt(2), each spin
independently.  The symmetric convention (transmission 1/sqrt(2),
reflection i/sqrt(2)) is available to check that outcome probabilities do
not depend on the phase choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple

from .fock import (
    Location,
    Mode,
    Pair,
    Party,
    SparseState,
    Spin,
    Statistics,
    inner_product,
    normalize,
    relabel_modes,
    scale_add,
    substitute_modes,
)

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


class DetectorModel(Enum):
    """Whether the path detectors keep or swallow the measured particles."""

    NON_ABSORBING = "nonabsorbing"
    ABSORBING = "absorbing"


class OutcomeKind(Enum):
    ANTIBUNCH = "antibunch"
    BUNCH_LEFT = "bunch-left"
    BUNCH_RIGHT = "bunch-right"
    #: Post-selection tag for the merged bosonic kept class (both bunched
    #: ports); never produced by measure_path itself.
    BUNCHED = "bunched"


@dataclass(frozen=True)
class PathOutcome:
    kind: OutcomeKind
    slot: int


@dataclass(frozen=True)
class MeasurementResult:
    outcome: PathOutcome
    probability: float
    post_state: SparseState


class OpticsError(ValueError):
    """Base error for misuse of the optical primitives."""


class SlotStateError(OpticsError):
    """A slot is not in the stage the operation expects."""


class ProtocolFailureError(OpticsError):
    """The kept post-selection class has probability zero."""


def _bob_slot_modes(occ, slot: int) -> List[Tuple[Mode, int]]:
    return [
        (mode, count)
        for mode, count in occ
        if mode.party is Party.BOB and mode.slot == slot
    ]


def flip_spins(state: SparseState, slots: Iterable[int]) -> SparseState:
    """Toggle the spin of Bob's left-pair source modes at the given slots.

    This is the unitary applied in arm l_i before the beam splitter; it
    only ever sees particles still in their source arm.  Amplitude signs
    follow from re-canonicalization, so the map is exactly unitary.
    """
    slots = set(slots)
    mapping: Dict[Mode, Mode] = {}
    for slot in slots:
        for spin in Spin:
            src = Mode(Party.BOB, Pair.LEFT, slot, Location.SOURCE_ARM, spin)
            mapping[src] = src.with_spin(Spin(1 - spin))
    return relabel_modes(state, mapping)


def _bs_mapping(slot: int, convention: str) -> Dict[Mode, Sequence[Tuple[complex, Mode]]]:
    mapping: Dict[Mode, Sequence[Tuple[complex, Mode]]] = {}
    for spin in Spin:
        out_left = Mode(Party.BOB, Pair.LEFT, slot, Location.DETECTOR_LEFT, spin)
        out_right = Mode(Party.BOB, Pair.LEFT, slot, Location.DETECTOR_RIGHT, spin)
        arm_left = Mode(Party.BOB, Pair.LEFT, slot, Location.SOURCE_ARM, spin)
        arm_right = Mode(Party.BOB, Pair.RIGHT, slot, Location.SOURCE_ARM, spin)
        if convention == "real":
            mapping[arm_left] = ((_INV_SQRT2, out_left), (_INV_SQRT2, out_right))
            mapping[arm_right] = ((_INV_SQRT2, out_left), (-_INV_SQRT2, out_right))
        elif convention == "symmetric":
            mapping[arm_left] = ((_INV_SQRT2, out_left), (1j * _INV_SQRT2, out_right))
            mapping[arm_right] = ((1j * _INV_SQRT2, out_left), (_INV_SQRT2, out_right))
        else:
            raise OpticsError("unknown beam-splitter convention %r" % convention)
    return mapping


def beam_splitter(state: SparseState, slot: int, convention: str = "real") -> SparseState:
    """Send both of Bob's arms at `slot` through a 50/50 beam splitter.

    Expansion goes through the elementary creation rules, so bunching
    enhancements (bosons) and Pauli cancellations (fermions) are automatic.
    Norm is preserved.
    """
    for occ in state.terms:
        for mode, _ in _bob_slot_modes(occ, slot):
            if mode.location is not Location.SOURCE_ARM:
                raise SlotStateError(
                    "slot %d already went through its beam splitter" % slot
                )
    return substitute_modes(state, _bs_mapping(slot, convention))


def _classify(occ, slot: int) -> OutcomeKind:
    n_left = 0
    n_right = 0
    for mode, count in _bob_slot_modes(occ, slot):
        if mode.location is Location.SOURCE_ARM:
            raise SlotStateError("slot %d was measured before its beam splitter" % slot)
        if mode.location is Location.DETECTOR_LEFT:
            n_left += count
        elif mode.location is Location.DETECTOR_RIGHT:
            n_right += count
    if n_left + n_right != 2:
        raise SlotStateError(
            "expected exactly two of Bob's particles at slot %d detectors" % slot
        )
    if n_left == 1:
        return OutcomeKind.ANTIBUNCH
    return OutcomeKind.BUNCH_LEFT if n_left == 2 else OutcomeKind.BUNCH_RIGHT


def _absorb(state: SparseState, slot: int) -> SparseState:
    """Move slot detector modes into the absorbed reservoir.

    The relabelling is a bijection (the pair field records which detector
    fired), so distinct detector contents stay orthogonal and every later
    round sees exactly the amplitudes it would have seen with non-absorbing
    detectors.  Deleting the particles outright would let branches with
    different absorbed spin content interfere, changing subsequent
    probabilities.
    """
    mapping: Dict[Mode, Mode] = {}
    for spin in Spin:
        left = Mode(Party.BOB, Pair.LEFT, slot, Location.DETECTOR_LEFT, spin)
        right = Mode(Party.BOB, Pair.LEFT, slot, Location.DETECTOR_RIGHT, spin)
        mapping[left] = Mode(Party.BOB, Pair.LEFT, slot, Location.ABSORBED, spin)
        mapping[right] = Mode(Party.BOB, Pair.RIGHT, slot, Location.ABSORBED, spin)
    return relabel_modes(state, mapping)


def measure_path(
    state: SparseState, slot: int, model: DetectorModel = DetectorModel.NON_ABSORBING
) -> List[MeasurementResult]:
    """Path measurement at slot's detectors; spins are never read.

    Returns one result per nonempty outcome class, probabilities summing
    to one (relative to the input norm).  Post-states are normalized; under
    the absorbing model the detected particles leave the optical path.
    """
    total = state.norm_squared()
    if total == 0.0:
        raise SlotStateError("cannot measure the zero state")
    buckets: Dict[OutcomeKind, Dict] = {}
    for occ, amp in state.terms.items():
        kind = _classify(occ, slot)
        buckets.setdefault(kind, {})[occ] = amp
    results = []
    for kind in (OutcomeKind.ANTIBUNCH, OutcomeKind.BUNCH_LEFT, OutcomeKind.BUNCH_RIGHT):
        if kind not in buckets:
            continue
        projected = SparseState(state.statistics, buckets[kind])
        post, weight = normalize(projected)
        if model is DetectorModel.ABSORBING:
            post = _absorb(post, slot)
        results.append(
            MeasurementResult(PathOutcome(kind, slot), weight / total, post)
        )
    return results


def post_select(
    results: Sequence[MeasurementResult], statistics: Statistics
) -> MeasurementResult:
    """Keep the statistics-appropriate outcome class.

    Fermions keep anti-bunching.  Bosons keep bunching: with non-absorbing
    detectors the two bunched ports are orthogonal components of one kept
    subspace and are merged coherently (sqrt(p) weights restore the exact
    projected amplitudes); with absorbing detectors the ports are classical
    alternatives whose post-states coincide up to a global sign, so either
    representative is returned with the summed probability.
    """
    if statistics is Statistics.FERMION:
        for res in results:
            if res.outcome.kind is OutcomeKind.ANTIBUNCH:
                return res
        raise ProtocolFailureError("no anti-bunching component to keep")

    bunched = [
        res
        for res in results
        if res.outcome.kind in (OutcomeKind.BUNCH_LEFT, OutcomeKind.BUNCH_RIGHT)
    ]
    if not bunched:
        raise ProtocolFailureError("no bunching component to keep")
    slot = bunched[0].outcome.slot
    probability = sum(res.probability for res in bunched)
    if len(bunched) == 1:
        post = bunched[0].post_state
    else:
        left, right = bunched
        overlap = abs(inner_product(left.post_state, right.post_state))
        if overlap > 0.5:
            # Absorbed ports: same physical state, classical mixture of
            # equivalent outcomes.
            post = left.post_state
        else:
            merged = scale_add(
                [
                    (math.sqrt(left.probability), left.post_state),
                    (math.sqrt(right.probability), right.post_state),
                ]
            )
            post, _ = normalize(merged)
    return MeasurementResult(PathOutcome(OutcomeKind.BUNCHED, slot), probability, post)
