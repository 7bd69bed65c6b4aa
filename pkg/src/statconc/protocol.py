"""The n-particle concentration protocol and its closed-form probabilities.

Two partially entangled n-particle pairs (left and right) are combined by
sending each of Bob's particle pairs through a 50/50 beam splitter and
post-selecting on the path outcome: anti-bunching for fermions, bunching
for bosons.  A spin flip on the left input arms beforehand aligns the
spins of the cross branches so that statistics suppresses the square
branches round by round.

Closed forms implemented alongside the exact engine:

    p_1            = |a|^4/2 + |b|^4/2 + 2|ab|^2
    ptilde_k       = |a|^4/2^k + |b|^4/2^k + 2|ab|^2      (flip applied)
    ptilde_k       = |a|^4 + |b|^4 + 2|ab|^2/2^k          (flip skipped)
    limit          = 2|ab|^2,   efficiency = |ab|^2

where (a, b) are the pair amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .fock import (
    FockError,
    Location,
    Mode,
    Pair,
    Party,
    SparseState,
    Spin,
    Statistics,
    from_modes,
    scale_add,
)
from .optics import DetectorModel, beam_splitter, flip_spins, measure_path, post_select
from .schmidt import entanglement_entropy

#: Cap on the pair length n; keeps the largest states to a few thousand terms.
MAX_SLOTS = 10

_NORM_TOL = 1e-12


class ConfigError(FockError):
    """Invalid protocol parameters."""


@dataclass(frozen=True)
class ProtocolConfig:
    alpha: complex
    beta: complex
    n: int
    statistics: Statistics
    detector: DetectorModel = DetectorModel.NON_ABSORBING
    apply_flip: bool = True

    def __post_init__(self) -> None:
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(total - 1.0) > _NORM_TOL:
            raise ConfigError("|alpha|^2 + |beta|^2 = %.12g, expected 1" % total)
        if not 1 <= self.n <= MAX_SLOTS:
            raise ConfigError("n must be in 1..%d, got %d" % (MAX_SLOTS, self.n))

    @property
    def measured_slots(self) -> range:
        """Slots the protocol measures: all n, or n-1 when the detectors
        absorb (the last pair of particles is left untouched)."""
        last = self.n if self.detector is DetectorModel.NON_ABSORBING else self.n - 1
        return range(1, last + 1)


@dataclass(frozen=True)
class RoundRecord:
    slot: int
    kept_probability: float
    cumulative_probability: float
    post_state_norm_check: float


@dataclass(frozen=True)
class ProtocolReport:
    config: ProtocolConfig
    rounds: List[RoundRecord]
    final_state: SparseState
    cumulative_probability: float
    closed_form_cumulative: float
    final_entropy_ebits: float
    efficiency: float


def build_pair_state(
    alpha: complex,
    beta: complex,
    n: int,
    pair: Pair,
    statistics: Statistics,
) -> SparseState:
    """One entangled pair: alpha |A up.. , B down..> + beta |A down.. , B up..>.

    Both branches are canonical operator strings over 2n source-arm modes,
    so the stated amplitudes are exact in our sign convention.
    """
    total = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(total - 1.0) > _NORM_TOL:
        raise ConfigError("pair amplitudes are not normalized")
    if not 1 <= n <= MAX_SLOTS:
        raise ConfigError("n must be in 1..%d, got %d" % (MAX_SLOTS, n))

    def branch(alice_spin: Spin, bob_spin: Spin, amp: complex) -> SparseState:
        modes = [Mode(Party.ALICE, pair, slot, Location.SOURCE_ARM, alice_spin) for slot in range(1, n + 1)]
        modes += [Mode(Party.BOB, pair, slot, Location.SOURCE_ARM, bob_spin) for slot in range(1, n + 1)]
        return from_modes(statistics, modes, amp)

    return scale_add(
        [
            (1.0, branch(Spin.UP, Spin.DOWN, alpha)),
            (1.0, branch(Spin.DOWN, Spin.UP, beta)),
        ]
    )


def build_total_state(config: ProtocolConfig) -> SparseState:
    """Tensor product of the left and right pairs: four branches, 4n particles.

    Branch amplitudes are the products alpha^2, beta^2, alpha*beta,
    alpha*beta attached to canonical configurations (occupied mode sets of
    the two pairs are disjoint, so the product term map is exact).
    """
    left = build_pair_state(config.alpha, config.beta, config.n, Pair.LEFT, config.statistics)
    right = build_pair_state(config.alpha, config.beta, config.n, Pair.RIGHT, config.statistics)
    terms = {}
    for occ_l, amp_l in left.terms.items():
        for occ_r, amp_r in right.terms.items():
            merged = tuple(sorted(occ_l + occ_r))
            terms[merged] = terms.get(merged, 0.0) + amp_l * amp_r
    return SparseState(config.statistics, terms)


def closed_form_p1(alpha: complex, beta: complex) -> float:
    """First-round kept probability |a|^4/2 + |b|^4/2 + 2|ab|^2."""
    a2 = abs(alpha) ** 2
    b2 = abs(beta) ** 2
    return a2 * a2 / 2.0 + b2 * b2 / 2.0 + 2.0 * a2 * b2


def closed_form_cumulative(alpha: complex, beta: complex, n: int) -> float:
    """Cumulative kept probability after n rounds (spin flip applied)."""
    a2 = abs(alpha) ** 2
    b2 = abs(beta) ** 2
    return (a2 * a2 + b2 * b2) / 2.0**n + 2.0 * a2 * b2


def closed_form_cumulative_unflipped(alpha: complex, beta: complex, n: int) -> float:
    """Cumulative kept probability after n rounds with the spin flip skipped.

    Mirror of the flipped formula: the aligned-spin square branches now pass
    deterministically while the cross branches are halved each round.
    """
    a2 = abs(alpha) ** 2
    b2 = abs(beta) ** 2
    return a2 * a2 + b2 * b2 + 2.0 * a2 * b2 / 2.0**n


def closed_form_efficiency(alpha: complex, beta: complex) -> float:
    """Limiting per-input-pair yield |alpha beta|^2 (half the limit of the
    cumulative kept probability: two pairs are consumed per output pair)."""
    return (abs(alpha) * abs(beta)) ** 2


def run_protocol(
    config: ProtocolConfig,
    slot_order: Optional[Sequence[int]] = None,
    convention: str = "real",
) -> ProtocolReport:
    """Run the full protocol and report per-round and cumulative numbers.

    `slot_order` optionally permutes the measured slots (the outcome
    statistics are permutation invariant); `convention` selects the
    beam-splitter phase convention.
    """
    expected = list(config.measured_slots)
    if slot_order is None:
        slot_order = expected
    elif sorted(slot_order) != expected:
        raise ConfigError("slot_order must permute %r" % expected)

    state = build_total_state(config)
    if config.apply_flip:
        state = flip_spins(state, range(1, config.n + 1))

    records: List[RoundRecord] = []
    cumulative = 1.0
    for slot in slot_order:
        state = beam_splitter(state, slot, convention=convention)
        results = measure_path(state, slot, config.detector)
        kept = post_select(results, config.statistics)
        state = kept.post_state
        cumulative *= kept.probability
        records.append(
            RoundRecord(slot, kept.probability, cumulative, state.norm_squared())
        )

    rounds_done = len(records)
    if config.apply_flip:
        closed = closed_form_cumulative(config.alpha, config.beta, rounds_done)
    else:
        closed = closed_form_cumulative_unflipped(config.alpha, config.beta, rounds_done)

    return ProtocolReport(
        config=config,
        rounds=records,
        final_state=state,
        cumulative_probability=cumulative,
        closed_form_cumulative=closed,
        final_entropy_ebits=entanglement_entropy(state),
        efficiency=cumulative / 2.0,
    )


def limit_state_check(report: ProtocolReport) -> float:
    """Weight fraction of the aligned-Alice ("square") branches.

    Branches whose two Alice spin strings agree are the alpha^2/beta^2
    square terms; their residual weight decays as 2^-rounds with the flip
    applied and dominates without it.
    """
    square = 0.0
    cross = 0.0
    for occ, amp in report.final_state.terms.items():
        spins = {}
        for mode, _ in occ:
            if mode.party is Party.ALICE:
                spins[mode.pair] = mode.spin
        weight = abs(amp) ** 2
        if spins[Pair.LEFT] is spins[Pair.RIGHT]:
            square += weight
        else:
            cross += weight
    return square / (square + cross)
